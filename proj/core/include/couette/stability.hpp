#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "couette/flows.hpp"
#include "couette/geometry.hpp"

namespace couette {

/// Symmetric coupling matrix of the perturbation energy identity at one
/// radius: zero diagonal, a rotational entry at (0,1)/(1,0) and an axial
/// entry at (0,2)/(2,0).
struct PerturbationMatrix {
    double rotational = 0.0;
    double axial = 0.0;

    std::array<std::array<double, 3>, 3> matrix() const {
        return {{{0.0, rotational, axial},
                 {rotational, 0.0, 0.0},
                 {axial, 0.0, 0.0}}};
    }
};

PerturbationMatrix perturbation_matrix(const FlowSpec& spec, const Annulus& a,
                                       double rho);

/// Largest eigenvalue of the perturbation matrix, computed both by a Jacobi
/// eigensolve and by the closed form sqrt(rot^2 + axial^2); throws
/// std::runtime_error if the two routes disagree beyond 1e-10.
double upsilon(const FlowSpec& spec, const Annulus& a, double rho);

/// rho - (R2^2 - R1^2) / (rho log(R2^2/R1^2)); the axial coupling of the
/// Dirichlet spiral families is proportional to it. Increasing, with
/// h(R1) < 0 < h(R2) < |h(R1)|.
double h_function(const Annulus& a, double rho);

struct MConstant {
    double value = 0.0;
    double argmax_rho = 0.0;
};

/// Magnitude constant of a flow: the maximum of upsilon over [R1, R2]. For
/// the Dirichlet families the maximum sits at the inner wall and the closed
/// form there is returned (the maximization is still run as a cross-check);
/// the vorticity families are maximized numerically (1024-point bracket plus
/// golden-section refinement to 1e-12 in rho).
MConstant m_constant(const FlowSpec& spec, const Annulus& a);

/// The certifiable smallness conditions, one per stability statement.
enum class StabilityTheorem {
    dirichlet_inner_rotating,
    dirichlet_outer_rotating,
    vorticity_outer_wall,
    vorticity_inner_wall_thin,
    vorticity_inner_wall_periodic,
};

std::string_view to_string(StabilityTheorem t);
std::optional<StabilityTheorem> theorem_from_string(std::string_view name);
StabilityTheorem default_theorem(FlowFamily f);

enum class BoundSource { builtin_lower, user_value };

struct StabilityReport {
    FlowFamily family = FlowFamily::couette_inner_rotating;
    StabilityTheorem theorem = StabilityTheorem::dirichlet_inner_rotating;
    BoundSource bound_source = BoundSource::builtin_lower;
    double m_value = 0.0;
    double argmax_rho = 0.0;
    double lambda_lower = 0.0;
    bool certified = false;
    /// False when the theorem's precondition fails (thin-annulus condition
    /// R2/R1 < e) and no user bound was supplied.
    bool applicable = true;
};

/// Evaluates the smallness certificate m < lambda. With builtin_lower the
/// bound is the computable spectral-gap lower bound matching the theorem;
/// the thin-annulus certificate additionally multiplies by the curl factor
/// (1 - log(R2/R1)) and is marked not applicable when R2/R1 >= e. The
/// periodic certificate has no computable builtin bound and requires a user
/// value. A certificate never claims instability: m >= lambda only means
/// "not certified".
StabilityReport certify(const FlowSpec& spec, const Annulus& a,
                        StabilityTheorem theorem,
                        BoundSource source = BoundSource::builtin_lower,
                        std::optional<double> user_lambda = std::nullopt);

/// certify with the family's default theorem.
StabilityReport certify(const FlowSpec& spec, const Annulus& a);

} // namespace couette
