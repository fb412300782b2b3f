#pragma once

#include <string>

#include <json.hpp>

#include "qcimf/amodule.hpp"
#include "qcimf/factorization.hpp"
#include "qcimf/reduction.hpp"

namespace qcimf {

// Insertion order is preserved so serialized files read in schema order.
using Json = nlohmann::ordered_json;

// Wraps the underlying parser; malformed text raises parse_error.
Json parse_json_text(const std::string& text);

// {"kind": "rationals"} or {"kind": "prime_field", "p": n}; the modulus is
// present exactly for prime fields.
Json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const Json& j);

// {"field": {...}, "q": "..."} with the scalar rendered as text.
Json ctx_to_json(const AlgebraCtx& ctx);
AlgebraCtx ctx_from_json(const Json& j);

// Array of 5 scalar strings in basis order (1, x, y, xy, yx).
Json belt_to_json(const BElt& e);
BElt belt_from_json(const Json& j, const AlgebraCtx& ctx);

// Array of 4 scalar strings in basis order (1, x, y, xy).
Json aelt_to_json(const AElt& e);
AElt aelt_from_json(const Json& j, const AlgebraCtx& ctx);

// Array of rows, each an array of scalar strings; rows must be rectangular.
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j, const FieldSpec& f);

// {"ctx": {...}, "rank": r, "C": [[...]], "D": [[...]]}; construction
// revalidates the factorization identities.
Json factorization_to_json(const Factorization& f);
Factorization factorization_from_json(const Json& j);

// {"ctx": {...}, "source": ref, "target": ref, "P": [[...]], "Q": [[...]]}.
// The refs name the files holding the endpoint factorizations; the caller
// loads them and passes the results in.
struct MorphismRefs {
  std::string source;
  std::string target;
};
Json morphism_to_json(const FactMorphism& m, const std::string& source_ref,
                      const std::string& target_ref);
MorphismRefs morphism_refs(const Json& j);
FactMorphism morphism_from_json(const Json& j, const Factorization& source,
                                const Factorization& target);

// {"ctx": {...}, "dim": d, "X": [[...]], "Y": [[...]]}; construction
// revalidates the module relations.
Json module_to_json(const AModule& m);
AModule module_from_json(const Json& j);

// Mirrors the report fields; lambda renders as text, the infinite point as
// "inf".
Json report_to_json(const ClassificationReport& r);
ClassificationReport report_from_json(const Json& j, const FieldSpec& f);

// Per-position booleans and cokernel reports of the alternating-sign complex.
Json schulz_to_json(const SchulzReport& r);

}  // namespace qcimf
