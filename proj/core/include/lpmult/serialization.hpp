#pragma once

// JSON records for the domain objects. Complex numbers are [re, im] pairs,
// angles are radians, all reals are doubles.

#include <nlohmann/json.hpp>

#include "lpmult/analytic_model.hpp"
#include "lpmult/circle_geometry.hpp"
#include "lpmult/littlewood_paley.hpp"
#include "lpmult/lp_sets.hpp"
#include "lpmult/mikhlin.hpp"
#include "lpmult/multiplier_norms.hpp"
#include "lpmult/taylor.hpp"

namespace lpmult {

using json = nlohmann::json;

json complex_to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& field);
json complex_list_to_json(std::span<const cplx> v);
std::vector<cplx> complex_list_from_json(const json& j, const std::string& field);

/// {"angles": [...], "accumulation": [...]}
json set_to_json(const ClosedCircleSet& set);
ClosedCircleSet set_from_json(const json& j);

/// Triangles, theta_min and optionally the inscribed constant.
json domain_to_json(const StarDomain& domain, bool with_inscribed = true);

/// {"type": "polynomial", "coeffs": [[re, im], ...]}
/// {"type": "pole_sum", "poles": [...], "weights": [...]}
/// {"type": "blaschke", "zeros": [...]}
/// {"type": "singular_inner"}
/// {"type": "product", "factors": [model, ...]}
/// {"type": "sum", "terms": [model, ...], "weights": [...]}
json model_to_json(const AnalyticModel& m);
AnalyticModel model_from_json(const json& j, const std::string& field = "model");

json ratio_report_to_json(const RatioReport& r);
json coefficients_to_json(const CoefficientSequence& seq);

json norm_estimate_to_json(const NormEstimate& e);
NormEstimate norm_estimate_from_json(const json& j);
json mikhlin_to_json(const MikhlinReport& r);
MikhlinReport mikhlin_from_json(const json& j);
json lp_constants_to_json(const LPConstantsReport& r);
LPConstantsReport lp_constants_from_json(const json& j);

}  // namespace lpmult
