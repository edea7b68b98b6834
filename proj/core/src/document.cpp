#include "twistlab/document.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace twistlab::doc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

FieldSpec parse_field(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw DocumentError("field: expected {\"kind\": ...}");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rational") return FieldSpec::rational();
    if (kind == "cyclotomic") {
        if (!j.contains("order")) throw DocumentError("cyclotomic field: missing order");
        int n = j.at("order").get<int>();
        if (n < 1) throw DocumentError("cyclotomic field: order must be positive");
        return FieldSpec::cyclotomic(n);
    }
    throw DocumentError("field: unknown kind '" + kind + "'");
}

json emit_field(const FieldSpec& f) {
    if (f.kind == FieldKind::Rational) return {{"kind", "rational"}};
    return {{"kind", "cyclotomic"}, {"order", f.order}};
}

Scalar parse_scalar_checked(const json& j, const FieldSpec& f, const std::string& where) {
    if (!j.is_string()) throw DocumentError(where + ": scalar must be a string");
    try {
        return scalar_parse(j.get<std::string>(), f);
    } catch (const ParseError& e) {
        throw DocumentError(where + ": " + e.what());
    }
}

int parse_index(const json& j, int dim, const std::string& where) {
    if (!j.is_number_integer()) throw DocumentError(where + ": index must be an integer");
    int i = j.get<int>();
    if (i < 0 || i >= dim) throw DocumentError(where + ": index " + std::to_string(i) +
                                               " out of range [0," + std::to_string(dim) + ")");
    return i;
}

Document parse_json_document(const json& j) {
    if (!j.is_object()) throw DocumentError("document: expected a JSON object");
    for (const char* key : {"field", "dim", "basis", "unit", "mult", "comult", "counit"})
        if (!j.contains(key)) throw DocumentError(std::string("document: missing key '") + key + "'");

    FieldSpec field = parse_field(j.at("field"));
    int dim = j.at("dim").get<int>();
    if (dim < 1) throw DocumentError("dim: must be positive");

    std::vector<std::string> basis = j.at("basis").get<std::vector<std::string>>();
    if ((int)basis.size() != dim) throw DocumentError("basis: expected dim labels");

    auto parse_sparse_vec = [&](const json& sv, const std::string& where) {
        SparseVec out;
        if (!sv.is_array()) throw DocumentError(where + ": expected an array");
        for (const auto& term : sv) {
            if (!term.is_array() || term.size() != 2)
                throw DocumentError(where + ": expected [index, scalar] terms");
            int i = parse_index(term[0], dim, where);
            Scalar c = parse_scalar_checked(term[1], field, where);
            if (!c.is_zero()) out[i] = c;
        }
        return out;
    };

    SparseVec unit = parse_sparse_vec(j.at("unit"), "unit");

    const json& jm = j.at("mult");
    if (!jm.is_array() || (int)jm.size() != dim) throw DocumentError("mult: expected dim rows");
    std::vector<std::vector<SparseVec>> mult(dim, std::vector<SparseVec>(dim));
    for (int i = 0; i < dim; ++i) {
        if (!jm[i].is_array() || (int)jm[i].size() != dim)
            throw DocumentError("mult: expected dim columns");
        for (int k = 0; k < dim; ++k)
            mult[i][k] = parse_sparse_vec(jm[i][k], "mult[" + std::to_string(i) + "][" +
                                                       std::to_string(k) + "]");
    }

    const json& jc = j.at("comult");
    if (!jc.is_array() || (int)jc.size() != dim)
        throw DocumentError("comult: expected dim entries");
    std::vector<Sparse2> comult(dim);
    for (int i = 0; i < dim; ++i) {
        const std::string where = "comult[" + std::to_string(i) + "]";
        if (!jc[i].is_array()) throw DocumentError(where + ": expected an array");
        for (const auto& term : jc[i]) {
            if (!term.is_array() || term.size() != 3)
                throw DocumentError(where + ": expected [j, k, scalar] terms");
            int a = parse_index(term[0], dim, where);
            int b = parse_index(term[1], dim, where);
            Scalar c = parse_scalar_checked(term[2], field, where);
            if (!c.is_zero()) comult[i][{a, b}] = c;
        }
    }

    const json& ju = j.at("counit");
    if (!ju.is_array() || (int)ju.size() != dim)
        throw DocumentError("counit: expected dim scalars");
    std::vector<Scalar> counit;
    for (int i = 0; i < dim; ++i)
        counit.push_back(parse_scalar_checked(ju[i], field, "counit[" + std::to_string(i) + "]"));

    Document out;
    try {
        out.pres = std::make_shared<BialgebraPresentation>(field, dim, basis, std::move(mult),
                                                           std::move(unit), std::move(comult),
                                                           std::move(counit));
    } catch (const BadPresentation& e) {
        throw DocumentError(std::string("presentation: ") + e.what());
    }

    if (j.contains("elements")) {
        const json& je = j.at("elements");
        if (!je.is_object()) throw DocumentError("elements: expected an object");
        for (const auto& [name, terms] : je.items()) {
            const std::string where = "elements." + name;
            if (!terms.is_array()) throw DocumentError(where + ": expected an array");
            std::vector<std::pair<std::vector<int>, Scalar>> support;
            size_t arity = 0;
            for (const auto& term : terms) {
                if (!term.is_array() || term.size() < 2)
                    throw DocumentError(where + ": expected [i..., scalar] terms");
                std::vector<int> key;
                for (size_t t = 0; t + 1 < term.size(); ++t) {
                    if (!term[t].is_number_integer())
                        throw DocumentError(where + ": index must be an integer");
                    key.push_back(term[t].get<int>());
                }
                if (arity == 0) arity = key.size();
                if (key.size() != arity)
                    throw DocumentError(where + ": inconsistent term arity");
                support.emplace_back(std::move(key),
                                     parse_scalar_checked(term.back(), field, where));
            }
            out.elements[name] = std::move(support);
        }
    }

    if (j.contains("morphisms")) {
        const json& jmo = j.at("morphisms");
        if (!jmo.is_object()) throw DocumentError("morphisms: expected an object");
        for (const auto& [name, m] : jmo.items()) {
            const std::string where = "morphisms." + name;
            if (!m.is_object() || !m.contains("target") || !m.contains("matrix"))
                throw DocumentError(where + ": expected {target, matrix, twist?}");
            MorphismData md;
            md.target = m.at("target").get<std::string>();
            if (m.contains("twist")) md.twist = m.at("twist").get<std::string>();
            const json& rows = m.at("matrix");
            if (!rows.is_array()) throw DocumentError(where + ".matrix: expected rows");
            for (const auto& row : rows) {
                if (!row.is_array()) throw DocumentError(where + ".matrix: expected rows");
                linalg::Vec r;
                for (const auto& cell : row)
                    r.push_back(parse_scalar_checked(cell, field, where + ".matrix"));
                md.matrix.push_back(std::move(r));
            }
            out.morphisms[name] = std::move(md);
        }
    }

    if (j.contains("factors")) {
        const json& jf = j.at("factors");
        if (!jf.is_array() || jf.size() != 2)
            throw DocumentError("factors: expected exactly two documents");
        for (const auto& sub : jf)
            out.factors.push_back(std::make_shared<Document>(parse_json_document(sub)));
    }
    return out;
}

ordered_json emit_json_document(const Document& d) {
    const PresPtr& p = d.pres;
    ordered_json j;
    j["field"] = emit_field(p->field);
    j["dim"] = p->dim;
    j["basis"] = p->basis_labels;

    auto emit_sparse_vec = [](const SparseVec& sv) {
        ordered_json arr = ordered_json::array();
        for (const auto& [i, c] : sv) arr.push_back(ordered_json::array({i, c.str()}));
        return arr;
    };
    j["unit"] = emit_sparse_vec(p->unit);

    ordered_json jm = ordered_json::array();
    for (int i = 0; i < p->dim; ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < p->dim; ++k) row.push_back(emit_sparse_vec(p->mult[i][k]));
        jm.push_back(std::move(row));
    }
    j["mult"] = std::move(jm);

    ordered_json jc = ordered_json::array();
    for (int i = 0; i < p->dim; ++i) {
        ordered_json terms = ordered_json::array();
        for (const auto& [key, c] : p->comult[i])
            terms.push_back(ordered_json::array({key[0], key[1], c.str()}));
        jc.push_back(std::move(terms));
    }
    j["comult"] = std::move(jc);

    ordered_json ju = ordered_json::array();
    for (int i = 0; i < p->dim; ++i) ju.push_back(p->counit[i].str());
    j["counit"] = std::move(ju);

    if (!d.elements.empty()) {
        ordered_json je = ordered_json::object();
        for (const auto& [name, support] : d.elements) {
            ordered_json terms = ordered_json::array();
            for (const auto& [key, c] : support) {
                ordered_json term = ordered_json::array();
                for (int i : key) term.push_back(i);
                term.push_back(c.str());
                terms.push_back(std::move(term));
            }
            je[name] = std::move(terms);
        }
        j["elements"] = std::move(je);
    }

    if (!d.morphisms.empty()) {
        ordered_json jmo = ordered_json::object();
        for (const auto& [name, m] : d.morphisms) {
            ordered_json rows = ordered_json::array();
            for (const auto& row : m.matrix) {
                ordered_json r = ordered_json::array();
                for (const auto& c : row) r.push_back(c.str());
                rows.push_back(std::move(r));
            }
            ordered_json jm2;
            jm2["target"] = m.target;
            jm2["matrix"] = std::move(rows);
            if (!m.twist.empty()) jm2["twist"] = m.twist;
            jmo[name] = std::move(jm2);
        }
        j["morphisms"] = std::move(jmo);
    }

    if (!d.factors.empty()) {
        ordered_json jf = ordered_json::array();
        for (const auto& sub : d.factors) jf.push_back(emit_json_document(*sub));
        j["factors"] = std::move(jf);
    }
    return j;
}

}  // namespace

TensorElement Document::element_over(const std::string& name,
                                     const std::vector<PresPtr>& factor_list) const {
    auto it = elements.find(name);
    if (it == elements.end()) throw DocumentError("element '" + name + "' not found");
    TensorElement out(factor_list);
    for (const auto& [key, c] : it->second) {
        if (key.size() != factor_list.size())
            throw DocumentError("element '" + name + "': arity " + std::to_string(key.size()) +
                                ", expected " + std::to_string(factor_list.size()));
        for (size_t leg = 0; leg < key.size(); ++leg)
            if (key[leg] < 0 || key[leg] >= factor_list[leg]->dim)
                throw DocumentError("element '" + name + "': index out of range");
        out.add_term(key, c);
    }
    return out;
}

Document parse_document(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DocumentError(std::string("invalid JSON: ") + e.what());
    }
    return parse_json_document(j);
}

Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DocumentError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

std::string emit_document(const Document& d) {
    return emit_json_document(d).dump(2) + "\n";
}

Document document_of(const PresPtr& pres,
                     const std::map<std::string, TensorElement>& elements) {
    Document d;
    d.pres = pres;
    for (const auto& [name, elem] : elements) {
        std::vector<std::pair<std::vector<int>, Scalar>> support;
        for (const auto& [key, c] : elem.support()) support.emplace_back(key, c);
        d.elements[name] = std::move(support);
    }
    return d;
}

}  // namespace twistlab::doc
