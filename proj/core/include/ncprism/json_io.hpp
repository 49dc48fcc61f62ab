#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncprism/convexity.hpp"
#include "ncprism/dilation.hpp"
#include "ncprism/matkernel.hpp"
#include "ncprism/ossys.hpp"
#include "ncprism/reps.hpp"

namespace ncprism {

using Json = nlohmann::json;

/// Parses text, throwing ParseError on malformed input.
Json parse_json(const std::string& text);

// Matrices are {"rows", "cols", "data"} with data a row-major list of
// [re, im] pairs. A bare number or [re, im] pair is accepted as a 1x1 matrix.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

/// {"tuple": [...]}; a bare array is accepted on input.
Json tuple_to_json(const std::vector<ComplexMatrix>& mats);
std::vector<ComplexMatrix> tuple_from_json(const Json& j);

Json symmetry_tuple_to_json(const SymmetryTuple& t);
Json rep_pair_to_json(const RepPair& p);
RepPair rep_pair_from_json(const Json& j);

Json dilation_to_json(const DilationResult& d);
DilationResult dilation_from_json(const Json& j);

Json povm_to_json(const Povm& p);
Povm povm_from_json(const Json& j);

Json element_to_json(const PrismElement& e);
PrismElement element_from_json(const Json& j);

Json diag_tuple_to_json(const DiagTuple& x);
DiagTuple diag_tuple_from_json(const Json& j);

Json dual_tuple_to_json(const DualTuple& z);
DualTuple dual_tuple_from_json(const Json& j);

Json membership_to_json(const MembershipReport& r);
Json canonical_form_to_json(const CanonicalForm& f);
Json polytope_to_json(const PolytopeSpec& p);

Json witness_to_json(const RefutationWitness& w);
RefutationWitness witness_from_json(const Json& j);
Json certificate_to_json(const PositivityCertificate& c);
PositivityCertificate certificate_from_json(const Json& j);
Json verdict_to_json(const PositivityVerdict& v);
PositivityVerdict verdict_from_json(const Json& j);

std::string to_string(VerdictKind kind);
VerdictKind verdict_kind_from_string(const std::string& s);

}  // namespace ncprism
