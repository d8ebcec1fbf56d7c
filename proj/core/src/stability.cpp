#include "couette/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "couette/functional_bounds.hpp"
#include "couette/numerics.hpp"

namespace couette {

namespace {

// Largest eigenvalue of a symmetric 3x3 matrix by cyclic Jacobi rotations.
double jacobi_max_eigenvalue(std::array<std::array<double, 3>, 3> m) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(m[0][1]) + std::abs(m[0][2]) + std::abs(m[1][2]);
        if (off == 0.0) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (m[p][q] == 0.0) continue;
                const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    return std::max({m[0][0], m[1][1], m[2][2]});
}

// Closed form of the largest eigenvalue for the zero-diagonal arrow shape.
double upsilon_closed(const PerturbationMatrix& pm) {
    return std::sqrt(pm.rotational * pm.rotational + pm.axial * pm.axial);
}

double upsilon_at(const FlowSpec& spec, const Annulus& a, double rho) {
    return upsilon_closed(perturbation_matrix(spec, a, rho));
}

bool family_matches(StabilityTheorem t, FlowFamily f) {
    switch (t) {
        case StabilityTheorem::dirichlet_inner_rotating:
            return f == FlowFamily::couette_inner_rotating ||
                   f == FlowFamily::spiral_poiseuille_inner_rotating;
        case StabilityTheorem::dirichlet_outer_rotating:
            return f == FlowFamily::couette_outer_rotating ||
                   f == FlowFamily::spiral_poiseuille_outer_rotating;
        case StabilityTheorem::vorticity_outer_wall:
            return f == FlowFamily::spiral_pc_vorticity_on_outer;
        case StabilityTheorem::vorticity_inner_wall_thin:
        case StabilityTheorem::vorticity_inner_wall_periodic:
            return f == FlowFamily::spiral_pc_vorticity_on_inner;
    }
    return false;
}

} // namespace

PerturbationMatrix perturbation_matrix(const FlowSpec& spec, const Annulus& a,
                                       double rho) {
    const RadialState s = radial_state(spec, a, rho);
    PerturbationMatrix pm;
    // alpha/2 (U/rho - U') for the azimuthal profile, -1/2 axial slope.
    pm.rotational = 0.5 * (s.u_theta / rho - s.du_theta);
    pm.axial = -0.5 * s.du_z;
    return pm;
}

double upsilon(const FlowSpec& spec, const Annulus& a, double rho) {
    const PerturbationMatrix pm = perturbation_matrix(spec, a, rho);
    const double closed = upsilon_closed(pm);
    const double numeric = jacobi_max_eigenvalue(pm.matrix());
    if (std::abs(closed - numeric) > 1e-10 * std::max(1.0, closed)) {
        throw std::runtime_error("upsilon: eigensolve and closed form disagree");
    }
    return closed;
}

double h_function(const Annulus& a, double rho) {
    return rho - a.sq_span() / (rho * 2.0 * a.log_ratio());
}

MConstant m_constant(const FlowSpec& spec, const Annulus& a) {
    const auto f = [&](double rho) { return upsilon_at(spec, a, rho); };

    // Coarse bracket of the maximizer.
    constexpr int grid_n = 1024;
    const double h = a.gap() / (grid_n - 1);
    int best = 0;
    double best_val = f(a.r_inner());
    for (int i = 1; i < grid_n; ++i) {
        const double x = (i == grid_n - 1) ? a.r_outer() : a.r_inner() + i * h;
        const double v = f(x);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double lo = std::max(a.r_inner(), a.r_inner() + (best - 1) * h);
    const double hi = std::min(a.r_outer(), a.r_inner() + (best + 1) * h);
    const double refined = num::golden_section_max(f, lo, hi, 1e-12);

    // The refinement never beats an exact endpoint evaluation, so compare.
    MConstant m{f(refined), refined};
    for (double endpoint : {a.r_inner(), a.r_outer()}) {
        const double v = f(endpoint);
        if (v > m.value) m = {v, endpoint};
    }

    if (is_dirichlet(spec.family)) {
        // The azimuthal coupling decays like rho^-2 and the axial coupling is
        // largest in magnitude at the inner wall, so the maximum is known.
        const MConstant closed{f(a.r_inner()), a.r_inner()};
        const bool at_wall =
            std::abs(m.argmax_rho - a.r_inner()) <= 1e-8 * a.gap() ||
            m.value <= closed.value * (1.0 + 1e-12);
        if (!at_wall) {
            throw std::runtime_error(
                "m_constant: numeric maximizer left the inner wall for a "
                "Dirichlet family");
        }
        return closed;
    }
    return m;
}

std::string_view to_string(StabilityTheorem t) {
    switch (t) {
        case StabilityTheorem::dirichlet_inner_rotating:
            return "dirichlet_inner_rotating";
        case StabilityTheorem::dirichlet_outer_rotating:
            return "dirichlet_outer_rotating";
        case StabilityTheorem::vorticity_outer_wall:
            return "vorticity_outer_wall";
        case StabilityTheorem::vorticity_inner_wall_thin:
            return "vorticity_inner_wall_thin";
        case StabilityTheorem::vorticity_inner_wall_periodic:
            return "vorticity_inner_wall_periodic";
    }
    return "unknown";
}

std::optional<StabilityTheorem> theorem_from_string(std::string_view name) {
    for (StabilityTheorem t : {StabilityTheorem::dirichlet_inner_rotating,
                               StabilityTheorem::dirichlet_outer_rotating,
                               StabilityTheorem::vorticity_outer_wall,
                               StabilityTheorem::vorticity_inner_wall_thin,
                               StabilityTheorem::vorticity_inner_wall_periodic}) {
        if (to_string(t) == name) return t;
    }
    return std::nullopt;
}

StabilityTheorem default_theorem(FlowFamily f) {
    switch (f) {
        case FlowFamily::couette_inner_rotating:
        case FlowFamily::spiral_poiseuille_inner_rotating:
            return StabilityTheorem::dirichlet_inner_rotating;
        case FlowFamily::couette_outer_rotating:
        case FlowFamily::spiral_poiseuille_outer_rotating:
            return StabilityTheorem::dirichlet_outer_rotating;
        case FlowFamily::spiral_pc_vorticity_on_outer:
            return StabilityTheorem::vorticity_outer_wall;
        case FlowFamily::spiral_pc_vorticity_on_inner:
            return StabilityTheorem::vorticity_inner_wall_thin;
    }
    throw std::invalid_argument("unknown flow family");
}

StabilityReport certify(const FlowSpec& spec, const Annulus& a,
                        StabilityTheorem theorem, BoundSource source,
                        std::optional<double> user_lambda) {
    if (!family_matches(theorem, spec.family)) {
        throw std::invalid_argument("theorem does not cover this flow family");
    }
    if (source == BoundSource::user_value && !user_lambda.has_value()) {
        throw std::invalid_argument("user bound source requires a lambda value");
    }

    StabilityReport report;
    report.family = spec.family;
    report.theorem = theorem;
    report.bound_source = source;

    const MConstant m = m_constant(spec, a);
    report.m_value = m.value;
    report.argmax_rho = m.argmax_rho;

    if (source == BoundSource::user_value) {
        report.lambda_lower = *user_lambda;
        report.certified = report.m_value < report.lambda_lower;
        return report;
    }

    const BoundSet bounds = bound_set(a);
    switch (theorem) {
        case StabilityTheorem::dirichlet_inner_rotating:
        case StabilityTheorem::dirichlet_outer_rotating:
        case StabilityTheorem::vorticity_outer_wall:
            report.lambda_lower = bounds.lower_best;
            break;
        case StabilityTheorem::vorticity_inner_wall_thin:
            if (!(bounds.curl_factor > 0.0)) {
                report.applicable = false;
                report.lambda_lower = 0.0;
                report.certified = false;
                return report;
            }
            report.lambda_lower = bounds.curl_factor * bounds.lower_best;
            break;
        case StabilityTheorem::vorticity_inner_wall_periodic:
            throw std::invalid_argument(
                "the periodic certificate has no builtin bound; supply a "
                "user value");
    }
    report.certified = report.m_value < report.lambda_lower;
    return report;
}

StabilityReport certify(const FlowSpec& spec, const Annulus& a) {
    return certify(spec, a, default_theorem(spec.family));
}

} // namespace couette
