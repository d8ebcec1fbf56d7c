#include "couette/flows.hpp"

#include <stdexcept>
#include <string>

namespace couette {

namespace {

void require_in_annulus(const Annulus& a, double rho) {
    if (!a.contains(rho)) {
        throw std::invalid_argument("rho = " + std::to_string(rho) +
                                    " outside [" + std::to_string(a.r_inner()) +
                                    ", " + std::to_string(a.r_outer()) + "]");
    }
}

// (R2^2 - R1^2) / log(R2/R1); recurring ratio in the axial profiles.
double span_over_log(const Annulus& a) { return a.sq_span() / a.log_ratio(); }

// Azimuthal vorticity of the unit Poiseuille profile, -d/drho of it.
double poiseuille_vorticity_theta(const Annulus& a, double rho) {
    return -poiseuille_profile_d1(a, rho);
}

// Radial pressure profile of the Couette flows (unit alpha) and derivative.
double couette_pressure(const Annulus& a, CouetteVariant v, double rho) {
    if (v == CouetteVariant::inner_rotating) {
        const double k = a.r_inner() / a.sq_span();
        const double r2sq = a.r_outer() * a.r_outer();
        return 0.5 * k * k *
               (rho * rho - r2sq * r2sq / (rho * rho) - 4.0 * r2sq * std::log(rho));
    }
    const double k = a.r_outer() / a.sq_span();
    const double r1sq = a.r_inner() * a.r_inner();
    return 0.5 * k * k *
           (rho * rho - r1sq * r1sq / (rho * rho) - 4.0 * r1sq * std::log(rho));
}

double couette_pressure_d1(const Annulus& a, CouetteVariant v, double rho) {
    // Factored forms of rho + R^4/rho^3 - 2 R^2/rho; the three-term sums
    // cancel catastrophically for tight annuli.
    if (v == CouetteVariant::inner_rotating) {
        const double k = a.r_inner() / a.sq_span();
        const double t = a.r_outer() * a.r_outer() - rho * rho;
        return k * k * t * t / (rho * rho * rho);
    }
    const double k = a.r_outer() / a.sq_span();
    const double t = rho * rho - a.r_inner() * a.r_inner();
    return k * k * t * t / (rho * rho * rho);
}

CouetteVariant couette_variant(FlowFamily f) {
    return moving_wall_is_inner(f) ? CouetteVariant::inner_rotating
                                   : CouetteVariant::outer_rotating;
}

} // namespace

bool is_couette(FlowFamily f) {
    return f == FlowFamily::couette_inner_rotating ||
           f == FlowFamily::couette_outer_rotating;
}

bool is_dirichlet(FlowFamily f) { return !is_vorticity(f); }

bool is_vorticity(FlowFamily f) {
    return f == FlowFamily::spiral_pc_vorticity_on_inner ||
           f == FlowFamily::spiral_pc_vorticity_on_outer;
}

bool moving_wall_is_inner(FlowFamily f) {
    return f == FlowFamily::couette_inner_rotating ||
           f == FlowFamily::spiral_poiseuille_inner_rotating ||
           f == FlowFamily::spiral_pc_vorticity_on_inner;
}

std::string_view to_string(FlowFamily f) {
    switch (f) {
        case FlowFamily::couette_inner_rotating: return "couette_inner_rotating";
        case FlowFamily::couette_outer_rotating: return "couette_outer_rotating";
        case FlowFamily::spiral_poiseuille_inner_rotating:
            return "spiral_poiseuille_inner_rotating";
        case FlowFamily::spiral_poiseuille_outer_rotating:
            return "spiral_poiseuille_outer_rotating";
        case FlowFamily::spiral_pc_vorticity_on_inner:
            return "spiral_pc_vorticity_on_inner";
        case FlowFamily::spiral_pc_vorticity_on_outer:
            return "spiral_pc_vorticity_on_outer";
    }
    return "unknown";
}

std::optional<FlowFamily> family_from_string(std::string_view name) {
    for (FlowFamily f : {FlowFamily::couette_inner_rotating,
                         FlowFamily::couette_outer_rotating,
                         FlowFamily::spiral_poiseuille_inner_rotating,
                         FlowFamily::spiral_poiseuille_outer_rotating,
                         FlowFamily::spiral_pc_vorticity_on_inner,
                         FlowFamily::spiral_pc_vorticity_on_outer}) {
        if (to_string(f) == name) return f;
    }
    return std::nullopt;
}

FlowSpec::FlowSpec(FlowFamily family_, double alpha_, double beta_, double gamma_)
    : family(family_), alpha(alpha_), beta(beta_), gamma(gamma_) {
    if (is_dirichlet(family) && gamma != 0.0) {
        throw std::invalid_argument(
            "gamma is only meaningful for the vorticity families");
    }
    if (is_couette(family) && beta != 0.0) {
        throw std::invalid_argument(
            "beta is only meaningful for the spiral families");
    }
}

double FlowSpec::axial_pressure_slope() const {
    if (is_vorticity(family)) return gamma;
    if (is_couette(family)) return 0.0;
    return beta;
}

double couette_profile(const Annulus& a, CouetteVariant variant, double rho) {
    require_in_annulus(a, rho);
    if (variant == CouetteVariant::inner_rotating) {
        // R1 (R2^2 - rho^2) / ((R2^2 - R1^2) rho); exactly zero at rho = R2.
        return a.r_inner() * (a.r_outer() * a.r_outer() - rho * rho) /
               (a.sq_span() * rho);
    }
    return a.r_outer() * (rho * rho - a.r_inner() * a.r_inner()) /
           (a.sq_span() * rho);
}

double couette_profile_d1(const Annulus& a, CouetteVariant variant, double rho) {
    require_in_annulus(a, rho);
    if (variant == CouetteVariant::inner_rotating) {
        return -a.r_inner() * (a.r_outer() * a.r_outer() + rho * rho) /
               (a.sq_span() * rho * rho);
    }
    return a.r_outer() * (rho * rho + a.r_inner() * a.r_inner()) /
           (a.sq_span() * rho * rho);
}

double couette_profile_d2(const Annulus& a, CouetteVariant variant, double rho) {
    require_in_annulus(a, rho);
    if (variant == CouetteVariant::inner_rotating) {
        return 2.0 * a.r_inner() * a.r_outer() * a.r_outer() /
               (a.sq_span() * rho * rho * rho);
    }
    return -2.0 * a.r_outer() * a.r_inner() * a.r_inner() /
           (a.sq_span() * rho * rho * rho);
}

double poiseuille_profile(const Annulus& a, double rho) {
    require_in_annulus(a, rho);
    // The log ratio is exactly 1 at rho = R2, so the profile vanishes
    // identically at both walls in floating point.
    const double t = std::log(rho / a.r_inner()) / a.log_ratio();
    const double r1sq = a.r_inner() * a.r_inner();
    return 0.25 * ((rho * rho - r1sq) - a.sq_span() * t);
}

double poiseuille_profile_d1(const Annulus& a, double rho) {
    require_in_annulus(a, rho);
    return 0.25 * (2.0 * rho - span_over_log(a) / rho);
}

double poiseuille_profile_d2(const Annulus& a, double rho) {
    require_in_annulus(a, rho);
    return 0.25 * (2.0 + span_over_log(a) / (rho * rho));
}

RadialState radial_state(const FlowSpec& spec, const Annulus& a, double rho) {
    require_in_annulus(a, rho);
    const CouetteVariant cv = couette_variant(spec.family);

    RadialState s;
    s.u_theta = spec.alpha * couette_profile(a, cv, rho);
    s.du_theta = spec.alpha * couette_profile_d1(a, cv, rho);
    s.d2u_theta = spec.alpha * couette_profile_d2(a, cv, rho);
    s.p_radial = spec.alpha * spec.alpha * couette_pressure(a, cv, rho);
    s.dp_radial = spec.alpha * spec.alpha * couette_pressure_d1(a, cv, rho);
    s.p_axial_slope = spec.axial_pressure_slope();

    switch (spec.family) {
        case FlowFamily::couette_inner_rotating:
        case FlowFamily::couette_outer_rotating:
            break;
        case FlowFamily::spiral_poiseuille_inner_rotating:
        case FlowFamily::spiral_poiseuille_outer_rotating:
            s.u_z = spec.beta * poiseuille_profile(a, rho);
            s.du_z = spec.beta * poiseuille_profile_d1(a, rho);
            s.d2u_z = spec.beta * poiseuille_profile_d2(a, rho);
            break;
        case FlowFamily::spiral_pc_vorticity_on_inner: {
            // Pressure-driven part vanishing at R2 with zero slope at R1,
            // plus the sliding log term scaled by the azimuthal vorticity of
            // the unit spiral flow at the moving wall.
            const double r1 = a.r_inner();
            const double r2sq = a.r_outer() * a.r_outer();
            const double slide = spec.beta * r1 * poiseuille_vorticity_theta(a, r1);
            const double lg = std::log(rho / a.r_outer());
            s.u_z = 0.25 * spec.gamma * (rho * rho - r2sq - 2.0 * r1 * r1 * lg) -
                    slide * lg;
            s.du_z = 0.5 * spec.gamma * (rho - r1 * r1 / rho) - slide / rho;
            s.d2u_z = 0.5 * spec.gamma * (1.0 + r1 * r1 / (rho * rho)) +
                      slide / (rho * rho);
            break;
        }
        case FlowFamily::spiral_pc_vorticity_on_outer: {
            const double r2 = a.r_outer();
            const double r1sq = a.r_inner() * a.r_inner();
            const double slide = spec.beta * r2 * poiseuille_vorticity_theta(a, r2);
            const double lg = std::log(rho / a.r_inner());
            s.u_z = 0.25 * spec.gamma * (rho * rho - r1sq - 2.0 * r2 * r2 * lg) -
                    slide * lg;
            s.du_z = 0.5 * spec.gamma * (rho - r2 * r2 / rho) - slide / rho;
            s.d2u_z = 0.5 * spec.gamma * (1.0 + r2 * r2 / (rho * rho)) +
                      slide / (rho * rho);
            break;
        }
    }
    return s;
}

CylVector velocity(const FlowSpec& spec, const Annulus& a, const CylPoint& p) {
    const RadialState s = radial_state(spec, a, p.rho);
    return {0.0, s.u_theta, s.u_z};
}

double pressure(const FlowSpec& spec, const Annulus& a, const CylPoint& p) {
    const RadialState s = radial_state(spec, a, p.rho);
    return s.p_radial + s.p_axial_slope * p.z;
}

CylVector vorticity(const FlowSpec& spec, const Annulus& a, const CylPoint& p) {
    const RadialState s = radial_state(spec, a, p.rho);
    // curl of (0, u_theta(rho), u_z(rho)):
    //   -u_z' e_theta + (u_theta' + u_theta/rho) e_z
    return {0.0, -s.du_z, s.du_theta + s.u_theta / p.rho};
}

} // namespace couette
