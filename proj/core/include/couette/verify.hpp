#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "couette/flows.hpp"
#include "couette/geometry.hpp"

namespace couette {

enum class Wall { inner = 1, outer = 2 };

/// Steady momentum and continuity residuals of a velocity/pressure pair at a
/// set of sample points. The three momentum entries follow the cylindrical
/// component order (rho, theta, z); divergence is reported separately.
struct ResidualReport {
    std::vector<CylPoint> sample_points;
    std::vector<std::array<double, 3>> momentum_residual;
    std::vector<double> divergence;
    /// Max of |entry| per equation: rho, theta, z momentum, divergence.
    std::array<double, 4> per_equation_max{};
    double max_abs = 0.0;
    std::uint64_t seed = 0;
};

/// Low-discrepancy interior samples (Halton bases 2/3/5). The seed offsets
/// the sequence so independent draws decorrelate while staying reproducible.
std::vector<CylPoint> sample_interior(const Annulus& a, int n, std::uint64_t seed = 0);
/// Wall samples (theta, z) for boundary audits.
std::vector<CylPoint> sample_wall(const Annulus& a, Wall wall, int n,
                                  std::uint64_t seed = 0);

/// Residuals of a family field evaluated with hand-derived radial
/// derivatives; every point must be strictly interior.
ResidualReport ns_residual_closed(const FlowSpec& spec, const Annulus& a,
                                  std::span<const CylPoint> points,
                                  std::uint64_t seed = 0);

/// A velocity/pressure pair evaluable anywhere in the closed annulus.
struct FlowField {
    std::function<CylVector(const CylPoint&)> velocity;
    std::function<double(const CylPoint&)> pressure;
};

FlowField make_flow_field(const FlowSpec& spec, const Annulus& a);

/// Default finite-difference step: 1e-4 * gap. Balances truncation against
/// rounding for double precision.
double default_fd_step(const Annulus& a);

struct FdResidual {
    std::array<double, 3> momentum{};
    double divergence = 0.0;

    double max_abs() const;
};

/// Second-order central-difference residual of an arbitrary field. The point
/// must keep a 2h margin to both walls.
FdResidual ns_residual_fd(const FlowField& field, const Annulus& a,
                          const CylPoint& p, double h);

/// Central-difference divergence and curl of a velocity field (same margin
/// rule as ns_residual_fd).
double fd_divergence(const std::function<CylVector(const CylPoint&)>& v,
                     const Annulus& a, const CylPoint& p, double h);
CylVector fd_curl(const std::function<CylVector(const CylPoint&)>& v,
                  const Annulus& a, const CylPoint& p, double h);

struct BoundaryCondition {
    std::string name;
    Wall wall;
    double max_violation = 0.0;
};

struct BoundaryReport {
    std::vector<BoundaryCondition> conditions;
    double max_violation = 0.0;
    int n_samples = 0;
};

/// Audits the wall conditions matching the family: Dirichlet data on both
/// walls for the Dirichlet families; impermeability plus the Robin and
/// Neumann tangential-curl conditions on the moving wall and no-slip on the
/// resting wall for the vorticity families. Derivatives are closed-form.
BoundaryReport boundary_check(const FlowSpec& spec, const Annulus& a,
                              int n_samples, std::uint64_t seed = 0);

struct NavierSlipCheck {
    double max_violation = 0.0;
    /// Magnitude of the azimuthal friction term 2 u_theta / R on the wall.
    double friction_term = 0.0;
    Wall wall = Wall::inner;
};

/// Verifies the wall identity relating the tangential curl to the strain
/// rate for fields with u . nu = 0:
///   (curl u) x nu = 2 [D(u) nu]_tau + sgn(nu . e_rho) (2/R) u_theta e_theta,
/// with nu the outward normal (-e_rho on the inner wall, +e_rho on the
/// outer). The strain tensor is assembled in the cartesian frame and
/// projected onto the tangent plane. Defaults to the family's moving wall.
NavierSlipCheck navier_slip_identity(const FlowSpec& spec, const Annulus& a,
                                     int n_samples);
NavierSlipCheck navier_slip_identity(const FlowSpec& spec, const Annulus& a,
                                     int n_samples, Wall wall);

/// Divergence-free, curl-free field (0, -1/rho, 0) that is tangent to both
/// walls yet nowhere zero; rho must be positive.
CylVector counterexample_field(const CylPoint& p);

} // namespace couette
