#pragma once

#include <json.hpp>

#include "bordqft/compare.hpp"
#include "bordqft/lbord.hpp"

namespace bordqft {

using Json = nlohmann::json;

Json rat_to_json(const Rat& r);           // exact "p/q" string
Rat rat_from_json(const Json& j);
Json matrix_to_json(const RatMat& m);

Json spacetime_to_json(const LatticeSpacetime& m);
LatticeSpacetime spacetime_from_json(const Json& j);

Json field_to_json(const Field& f);

Json bordism_to_json(const Bordism& b);
Bordism bordism_from_json(const Json& j);

// Instance interchange format: groupoids as {objects, morphisms, compose,
// inverse, identities}, functors as {obj, mor}, plus the pseudo-category
// sections c0, c1, src, tgt, hcomp, hunit, assoc, lunit, runit.
Json pseudocat_to_json(const PseudoCat& p);
PseudoCat pseudocat_from_json(const Json& j);

Json law_reports_to_json(const std::vector<LawReport>& laws);
Json check_results_to_json(const std::vector<CheckResult>& results);

}  // namespace bordqft
