#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "twistlab/algebra.hpp"

// JSON file format for presentations, named elements, and named morphisms.
// All scalars travel as strings in the exact scalar grammar; no floats.
namespace twistlab::doc {

// Malformed input (parse errors, bad shapes, unresolved names): the CLI maps
// this to exit code 2.
struct DocumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MorphismData {
    std::string target;  // "self", "other", or a file path
    linalg::Mat matrix;  // dense, target-dim x source-dim
    std::string twist;   // element name on the target; empty = trivial twist
};

struct Document {
    PresPtr pres;
    // Raw element supports in document order: name -> [(index tuple, scalar)].
    std::map<std::string, std::vector<std::pair<std::vector<int>, Scalar>>> elements;
    std::map<std::string, MorphismData> morphisms;
    // Optional pair of factor documents (for weak R-matrix checks the element
    // indices refer to the factors, not the product).
    std::vector<std::shared_ptr<Document>> factors;

    bool has_element(const std::string& name) const { return elements.count(name) > 0; }
    // Materializes a named element over the given factor list; validates
    // arity and index ranges.
    TensorElement element_over(const std::string& name,
                               const std::vector<PresPtr>& factor_list) const;
};

Document parse_document(const std::string& json_text);
Document load_document(const std::string& path);

// Canonical emission (fixed key order, 2-space indent, trailing newline);
// parse(emit(d)) reproduces d and emit is its own round-trip fixed point.
std::string emit_document(const Document& d);

// Convenience: document for a bare presentation plus named arity-verified
// elements given as TensorElements over that presentation.
Document document_of(const PresPtr& pres,
                     const std::map<std::string, TensorElement>& elements = {});

}  // namespace twistlab::doc
