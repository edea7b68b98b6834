// Command-line surface: exact validation, twisting, decomposition, binary
// products, and fixture export for bialgebra presentation documents.
//
// Exit codes: 0 = all checks pass, 1 = a mathematical check failed,
// 2 = input/parse/usage error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "twistlab/document.hpp"
#include "twistlab/examples.hpp"
#include "twistlab/twtr.hpp"

using namespace twistlab;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Args {
    std::string command;
    std::vector<std::string> positional;
    std::map<std::string, std::string> options;  // --key value
    bool json = false;
};

Args parse_args(int argc, char** argv) {
    Args a;
    if (argc < 2) throw UsageError("missing command");
    a.command = argv[1];
    for (int i = 2; i < argc; ++i) {
        std::string s = argv[i];
        if (s == "--json") {
            a.json = true;
        } else if (s.rfind("--", 0) == 0) {
            if (i + 1 >= argc) throw UsageError("option " + s + " needs a value");
            a.options[s.substr(2)] = argv[++i];
        } else if (s == "-o") {
            if (i + 1 >= argc) throw UsageError("-o needs a value");
            a.options["out"] = argv[++i];
        } else {
            a.positional.push_back(std::move(s));
        }
    }
    return a;
}

ordered_json checks_json(const ValidationReport& rep) {
    ordered_json arr = ordered_json::array();
    for (const auto& e : rep.entries) {
        ordered_json c;
        c["name"] = e.name;
        c["pass"] = e.pass;
        if (!e.pass && !e.residual.empty()) c["residual"] = e.residual;
        arr.push_back(std::move(c));
    }
    return arr;
}

void print_report(const Args& a, const ValidationReport& rep,
                  const std::vector<std::string>& inputs,
                  const ordered_json& outputs = ordered_json()) {
    if (a.json) {
        ordered_json j;
        j["command"] = a.command;
        j["inputs"] = inputs;
        j["checks"] = checks_json(rep);
        if (!outputs.is_null()) j["outputs"] = outputs;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << rep.str();
    }
}

void write_output(const Args& a, const std::string& text) {
    auto it = a.options.find("out");
    if (it == a.options.end() || it->second == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(it->second);
    if (!out) throw doc::DocumentError("cannot write file: " + it->second);
    out << text;
}

const std::string& opt(const Args& a, const std::string& key) {
    auto it = a.options.find(key);
    if (it == a.options.end()) throw UsageError("missing --" + key);
    return it->second;
}

FieldSpec parse_field_opt(const std::string& s) {
    if (s == "rational") return FieldSpec::rational();
    if (s.rfind("cyclotomic:", 0) == 0)
        return FieldSpec::cyclotomic(std::stoi(s.substr(11)));
    throw UsageError("unknown field '" + s + "' (rational | cyclotomic:N)");
}

// ---------------------------------------------------------------------------

int cmd_check(const Args& a) {
    if (a.positional.size() != 1) throw UsageError("check FILE --mode MODE [--json]");
    doc::Document d = doc::load_document(a.positional[0]);
    std::string mode = opt(a, "mode");

    ValidationReport rep = validate_bialgebra(d.pres);
    if (mode == "bialgebra") {
        // nothing further
    } else if (mode == "quasitriangular" || mode == "triangular") {
        auto chk = check_rmatrix(d.pres, d.element_over("R", {d.pres, d.pres}));
        for (const auto& e : chk.report.entries) rep.entries.push_back(e);
        if (mode == "triangular")
            rep.require("triangular (R^op = R^{-1})", chk.value && chk.value->triangular);
    } else if (mode.rfind("twist:", 0) == 0) {
        std::string name = mode.substr(6);
        auto chk = check_twist(d.pres, d.element_over(name, {d.pres, d.pres}));
        for (const auto& e : chk.report.entries) rep.entries.push_back(e);
    } else if (mode.rfind("weak:", 0) == 0) {
        std::string rest = mode.substr(5);
        auto colon = rest.rfind(':');
        if (colon == std::string::npos) throw UsageError("weak mode is weak:NAME:SPLIT");
        std::string name = rest.substr(0, colon);
        int split = std::stoi(rest.substr(colon + 1));
        if (d.factors.size() != 2)
            throw doc::DocumentError("weak mode needs a 'factors' pair in the document");
        const PresPtr& fa = d.factors[0]->pres;
        const PresPtr& fb = d.factors[1]->pres;
        if (fa->dim != split)
            throw doc::DocumentError("weak split " + std::to_string(split) +
                                     " does not match first factor dimension " +
                                     std::to_string(fa->dim));
        auto chk = check_weak_rmatrix(fa, fb, d.element_over(name, {fa, fb}));
        for (const auto& e : chk.report.entries) rep.entries.push_back(e);
        if (chk.value)
            rep.require("central", is_central(chk.value->element));
    } else {
        throw UsageError("unknown mode '" + mode + "'");
    }
    print_report(a, rep, {a.positional[0]});
    return rep.ok() ? 0 : 1;
}

int cmd_twist(const Args& a) {
    if (a.positional.size() != 1) throw UsageError("twist FILE --element NAME [-o OUT]");
    doc::Document d = doc::load_document(a.positional[0]);
    std::string name = opt(a, "element");
    auto chk = check_twist(d.pres, d.element_over(name, {d.pres, d.pres}));
    if (!chk.value) {
        print_report(a, chk.report, {a.positional[0]});
        return 1;
    }
    PresPtr twisted = twist_bialgebra(d.pres, *chk.value);
    std::map<std::string, TensorElement> elems;
    if (d.has_element("R")) {
        auto rchk = check_rmatrix(d.pres, d.element_over("R", {d.pres, d.pres}));
        if (!rchk.value) {
            print_report(a, rchk.report, {a.positional[0]});
            return 1;
        }
        RMatrix rf = twist_rmatrix(*rchk.value, *chk.value);
        elems.emplace("R", rf.element.retag({twisted, twisted}));
    }
    write_output(a, doc::emit_document(doc::document_of(twisted, elems)));
    return 0;
}

int cmd_decompose(const Args& a) {
    if (a.positional.size() != 2)
        throw UsageError("decompose FILEA FILEB --element NAME");
    doc::Document da = doc::load_document(a.positional[0]);
    doc::Document db = doc::load_document(a.positional[1]);
    std::string name = opt(a, "element");
    PresPtr prod = tensor_bialgebra(da.pres, db.pres);
    TensorElement elem = da.element_over(name, {prod, prod});

    ordered_json out;
    auto emit_elem = [](const TensorElement& t) { return t.str(); };

    auto rchk = check_rmatrix(prod, elem);
    if (rchk.value) {
        RDecomposition dec = decompose_rmatrix(da.pres, db.pres, *rchk.value);
        out["kind"] = "rmatrix";
        out["R1"] = emit_elem(dec.r1.element);
        out["R2"] = emit_elem(dec.r2.element);
        out["Q"] = emit_elem(dec.q.element);
        out["Q_central"] = dec.q.central;
        ValidationReport rep;
        rep.require("element is a quasitriangular structure", true);
        print_report(a, rep, {a.positional[0], a.positional[1]}, out);
        if (!a.json) std::cout << out.dump(2) << "\n";
        return 0;
    }
    auto tchk = check_twist(prod, elem);
    if (!tchk.value) {
        ValidationReport rep;
        rep.require("element is a twist or quasitriangular structure", false,
                    tchk.report.first_failure());
        print_report(a, rep, {a.positional[0], a.positional[1]});
        return 1;
    }
    PhiDecomposition phi = phi_decompose(da.pres, db.pres, *tchk.value);
    bool canon = canonical_form_check(da.pres, db.pres, *tchk.value);
    out["kind"] = "twist";
    out["F1"] = emit_elem(phi.f1.element);
    out["F2"] = emit_elem(phi.f2.element);
    out["G"] = emit_elem(phi.g);
    out["H"] = emit_elem(phi.h);
    out["R"] = emit_elem(phi.r);
    out["canonical_form"] = canon;
    ValidationReport rep;
    rep.require("element is a twist", true);
    rep.require("canonical form (gauge by G) matches", canon);
    print_report(a, rep, {a.positional[0], a.positional[1]}, out);
    if (!a.json) std::cout << out.dump(2) << "\n";
    return rep.ok() ? 0 : 1;
}

int cmd_product(const Args& a) {
    if (a.positional.size() != 2)
        throw UsageError("product FILEA FILEB [-o OUT] [--diag M1,M2]");
    doc::Document da = doc::load_document(a.positional[0]);
    doc::Document db = doc::load_document(a.positional[1]);

    auto endpoint_of = [](const doc::Document& d, const std::string& file) {
        auto chk = check_rmatrix(d.pres, d.element_over("R", {d.pres, d.pres}));
        if (!chk.value || !chk.value->triangular)
            throw std::pair<ValidationReport, std::string>(chk.report, file);
        return twtr::Endpoint{d.pres, *chk.value};
    };
    twtr::Endpoint ea, eb;
    try {
        ea = endpoint_of(da, a.positional[0]);
        eb = endpoint_of(db, a.positional[1]);
    } catch (std::pair<ValidationReport, std::string>& fail) {
        fail.first.require("triangular structure on " + fail.second, false);
        print_report(a, fail.first, {a.positional[0], a.positional[1]});
        return 1;
    }
    twtr::Endpoint prod = twtr::tensor_object(ea, eb);
    auto [p1, p2] = twtr::projections(ea, eb);

    doc::Document out = doc::document_of(
        prod.pres, {{"R", prod.r->element.retag({prod.pres, prod.pres})}});
    out.morphisms["p1"] = doc::MorphismData{a.positional[0], p1.f.matrix, ""};
    out.morphisms["p2"] = doc::MorphismData{a.positional[1], p2.f.matrix, ""};

    ValidationReport rep;
    rep.require("product triangular structure validated", true);
    if (a.options.count("diag")) {
        std::string spec = a.options.at("diag");
        auto comma = spec.find(',');
        if (comma == std::string::npos) throw UsageError("--diag takes M1,M2");
        auto resolve_cell = [&](const std::string& mname) {
            auto it = da.morphisms.find(mname);
            if (it == da.morphisms.end())
                throw doc::DocumentError("morphism '" + mname + "' not found in " +
                                         a.positional[0]);
            const doc::Document& tgtdoc =
                (it->second.target == "self") ? da : db;  // "other" or path = FILEB
            twtr::Endpoint tgt = (it->second.target == "self") ? ea : eb;
            Twist tw = Twist::trivial(tgtdoc.pres);
            if (!it->second.twist.empty())
                tw = require_twist(tgtdoc.pres,
                                   tgtdoc.element_over(it->second.twist,
                                                       {tgtdoc.pres, tgtdoc.pres}));
            LinearMap f(da.pres, tgtdoc.pres, it->second.matrix);
            return twtr::require_morphism(twtr::Endpoint{da.pres, ea.r}, tgt, f, tw);
        };
        try {
            twtr::TwistedMorphism c1 = resolve_cell(spec.substr(0, comma));
            twtr::TwistedMorphism c2 = resolve_cell(spec.substr(comma + 1));
            twtr::TwistedMorphism diag = twtr::diagonal(c1, c2);
            rep.require("diagonal validated; projection equations hold", true);
            out.elements["F_diag"] = {};
            for (const auto& [key, c] : diag.F.element.support())
                out.elements["F_diag"].emplace_back(key, c);
        } catch (const twtr::InvalidCell& e) {
            rep.require("diagonal validated; projection equations hold", false, e.what());
        }
    }
    print_report(a, rep, {a.positional[0], a.positional[1]});
    if (!rep.ok()) return 1;
    write_output(a, doc::emit_document(out));
    return 0;
}

int cmd_example(const Args& a) {
    if (a.positional.size() != 1)
        throw UsageError("example NAME [params] [-o OUT]");
    const std::string& name = a.positional[0];
    doc::Document out;
    try {
        if (name == "sweedler") {
            FieldSpec f = a.options.count("field") ? parse_field_opt(a.options.at("field"))
                                                   : FieldSpec::rational();
            Scalar lambda = scalar_parse(
                a.options.count("lambda") ? a.options.at("lambda") : "0", f);
            PresPtr h = examples::sweedler_presentation(f);
            std::map<std::string, TensorElement> elems{
                {"R", examples::sweedler_rmatrix(h, lambda).element}};
            std::optional<doc::MorphismData> morph;
            if (a.options.count("d")) {
                Scalar dd = scalar_parse(a.options.at("d"), f);
                elems.emplace("F", examples::sweedler_twist(h, dd).element);
            }
            if (a.options.count("s")) {
                Scalar ss = scalar_parse(a.options.at("s"), f);
                morph = doc::MorphismData{"self",
                                          examples::sweedler_morphism(h, ss).matrix,
                                          a.options.count("d") ? "F" : ""};
            }
            out = doc::document_of(h, elems);
            if (morph) out.morphisms["f"] = *morph;
        } else if (name == "group_algebra") {
            FieldSpec f = parse_field_opt(
                a.options.count("field") ? a.options.at("field") : "rational");
            std::vector<int> orders;
            std::string spec = opt(a, "orders");
            size_t pos = 0;
            while (pos != std::string::npos) {
                size_t comma = spec.find(',', pos);
                orders.push_back(std::stoi(spec.substr(pos, comma - pos)));
                pos = (comma == std::string::npos) ? comma : comma + 1;
            }
            PresPtr g = examples::group_algebra(orders, f);
            // Group algebras are cocommutative, hence triangular with R = 1(x)1.
            out = doc::document_of(g, {{"R", outer(unit_element(g), unit_element(g))}});
        } else if (name == "gamma_twist") {
            int n = std::stoi(opt(a, "n"));
            auto [tw, f] = examples::gamma_twist(n);
            out = doc::document_of(tw.carrier, {{"F", tw.element}});
            out.morphisms["f"] = doc::MorphismData{"self", f.matrix, "F"};
        } else if (name == "base_field") {
            FieldSpec f = a.options.count("field") ? parse_field_opt(a.options.at("field"))
                                                   : FieldSpec::rational();
            out = doc::document_of(base_field_presentation(f));
        } else {
            throw UsageError("unknown example '" + name + "'");
        }
    } catch (const std::invalid_argument&) {
        throw UsageError("bad numeric parameter for example '" + name + "'");
    } catch (const ParseError& e) {
        throw UsageError(std::string("bad scalar parameter: ") + e.what());
    }
    write_output(a, doc::emit_document(out));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        Args a = parse_args(argc, argv);
        if (a.command == "check") return cmd_check(a);
        if (a.command == "twist") return cmd_twist(a);
        if (a.command == "decompose") return cmd_decompose(a);
        if (a.command == "product") return cmd_product(a);
        if (a.command == "example") return cmd_example(a);
        throw UsageError("unknown command '" + a.command + "'");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n"
                  << "commands: check | twist | decompose | product | example\n";
        return 2;
    } catch (const doc::DocumentError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
