#pragma once

#include <json.hpp>

#include "couette/flows.hpp"
#include "couette/functional_bounds.hpp"
#include "couette/stability.hpp"
#include "couette/verify.hpp"

namespace couette {

inline void to_json(nlohmann::json& j, const Annulus& a) {
    j = {{"r_inner", a.r_inner()}, {"r_outer", a.r_outer()}};
}

/// Validating parse; Annulus has no default state, so this replaces the
/// usual from_json hook.
inline Annulus annulus_from_json(const nlohmann::json& j) {
    return Annulus(j.at("r_inner").get<double>(), j.at("r_outer").get<double>());
}

inline void to_json(nlohmann::json& j, const FlowSpec& spec) {
    j = {{"family", std::string(to_string(spec.family))},
         {"alpha", spec.alpha},
         {"beta", spec.beta},
         {"gamma", spec.gamma}};
}

inline FlowSpec flow_spec_from_json(const nlohmann::json& j) {
    const auto name = j.at("family").get<std::string>();
    const auto family = family_from_string(name);
    if (!family) {
        throw std::invalid_argument("unknown flow family: " + name);
    }
    return FlowSpec(*family, j.value("alpha", 0.0), j.value("beta", 0.0),
                    j.value("gamma", 0.0));
}

inline void to_json(nlohmann::json& j, const ResidualReport& r) {
    j = {{"max_abs", r.max_abs},
         {"per_equation_max", r.per_equation_max},
         {"n_samples", r.sample_points.size()},
         {"seed", r.seed}};
}

inline void to_json(nlohmann::json& j, const BoundaryReport& r) {
    nlohmann::json conditions = nlohmann::json::array();
    for (const auto& c : r.conditions) {
        conditions.push_back({{"name", c.name},
                              {"wall", c.wall == Wall::inner ? "inner" : "outer"},
                              {"max_violation", c.max_violation}});
    }
    j = {{"conditions", std::move(conditions)},
         {"max_violation", r.max_violation},
         {"n_samples", r.n_samples}};
}

inline void to_json(nlohmann::json& j, const BoundSet& b) {
    j = {{"lower_square", b.lower_square},
         {"lower_radial", b.lower_radial},
         {"lower_best", b.lower_best},
         {"upper", b.upper},
         {"curl_factor", b.curl_factor}};
}

inline void to_json(nlohmann::json& j, const StabilityReport& r) {
    j = {{"family", std::string(to_string(r.family))},
         {"theorem", std::string(to_string(r.theorem))},
         {"bound_source",
          r.bound_source == BoundSource::builtin_lower ? "builtin" : "user"},
         {"m_value", r.m_value},
         {"argmax_rho", r.argmax_rho},
         {"lambda_lower", r.lambda_lower},
         {"certified", r.certified},
         {"applicable", r.applicable}};
}

} // namespace couette
