#include "couette/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "couette/numerics.hpp"

namespace couette {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void require_strict_interior(const Annulus& a, const CylPoint& p) {
    if (!a.strictly_contains(p.rho)) {
        throw std::invalid_argument("sample point on or outside the walls");
    }
}

// Momentum + continuity residual assembled from the full cylindrical
// equations. Derivative arguments follow the naming d<comp>_d<var>.
struct DerivativeBundle {
    CylVector u;
    double p_rho, p_theta, p_z;
    CylVector d_rho, d_theta, d_z;       // first derivatives per direction
    CylVector d2_rho, d2_theta, d2_z;    // pure second derivatives
};

std::array<double, 4> assemble_residual(double rho, const DerivativeBundle& d) {
    const double inv_rho = 1.0 / rho;
    const double inv_rho2 = inv_rho * inv_rho;
    const CylVector& u = d.u;

    const double lap_rho = inv_rho * d.d_rho.v_rho + d.d2_rho.v_rho +
                           inv_rho2 * d.d2_theta.v_rho + d.d2_z.v_rho;
    const double lap_theta = inv_rho * d.d_rho.v_theta + d.d2_rho.v_theta +
                             inv_rho2 * d.d2_theta.v_theta + d.d2_z.v_theta;
    const double lap_z = inv_rho * d.d_rho.v_z + d.d2_rho.v_z +
                         inv_rho2 * d.d2_theta.v_z + d.d2_z.v_z;

    const double conv_rho = u.v_rho * d.d_rho.v_rho +
                            u.v_theta * inv_rho * d.d_theta.v_rho +
                            u.v_z * d.d_z.v_rho;
    const double conv_theta = u.v_rho * d.d_rho.v_theta +
                              u.v_theta * inv_rho * d.d_theta.v_theta +
                              u.v_z * d.d_z.v_theta;
    const double conv_z = u.v_rho * d.d_rho.v_z +
                          u.v_theta * inv_rho * d.d_theta.v_z +
                          u.v_z * d.d_z.v_z;

    const double eq_rho = lap_rho - conv_rho + u.v_theta * u.v_theta * inv_rho -
                          u.v_rho * inv_rho2 - 2.0 * inv_rho2 * d.d_theta.v_theta -
                          d.p_rho;
    const double eq_theta = lap_theta - conv_theta - u.v_rho * u.v_theta * inv_rho -
                            u.v_theta * inv_rho2 + 2.0 * inv_rho2 * d.d_theta.v_rho -
                            inv_rho * d.p_theta;
    const double eq_z = lap_z - conv_z - d.p_z;
    const double div = d.d_rho.v_rho + u.v_rho * inv_rho +
                       inv_rho * d.d_theta.v_theta + d.d_z.v_z;

    return {eq_rho, eq_theta, eq_z, div};
}

DerivativeBundle closed_form_bundle(const FlowSpec& spec, const Annulus& a,
                                    double rho) {
    const RadialState s = radial_state(spec, a, rho);
    DerivativeBundle d{};
    d.u = {0.0, s.u_theta, s.u_z};
    d.p_rho = s.dp_radial;
    d.p_theta = 0.0;
    d.p_z = s.p_axial_slope;
    d.d_rho = {0.0, s.du_theta, s.du_z};
    d.d2_rho = {0.0, s.d2u_theta, s.d2u_z};
    // The families depend on theta and z only through the linear pressure
    // term, so every other derivative in those directions vanishes.
    d.d_theta = d.d_z = d.d2_theta = d.d2_z = CylVector{};
    return d;
}

CylPoint shifted(const CylPoint& p, double d_rho, double d_theta, double d_z) {
    return CylPoint{p.rho + d_rho, p.theta + d_theta, p.z + d_z};
}

void require_fd_margin(const Annulus& a, const CylPoint& p, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("fd step must be positive");
    if (p.rho - 2.0 * h < a.r_inner() || p.rho + 2.0 * h > a.r_outer()) {
        throw std::invalid_argument("point too close to a wall for the fd stencil");
    }
}

// Hash-free deterministic offset of the Halton sequence per seed.
std::uint64_t sequence_start(std::uint64_t seed) { return 1 + 7919 * seed; }

struct WallData {
    Wall wall;
    double radius;
    double normal_sign; // nu . e_rho
};

WallData wall_data(const Annulus& a, Wall w) {
    if (w == Wall::inner) return {w, a.r_inner(), -1.0};
    return {w, a.r_outer(), +1.0};
}

Wall moving_wall(FlowFamily f) {
    return moving_wall_is_inner(f) ? Wall::inner : Wall::outer;
}

Wall resting_wall(FlowFamily f) {
    return moving_wall_is_inner(f) ? Wall::outer : Wall::inner;
}

} // namespace

std::vector<CylPoint> sample_interior(const Annulus& a, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need at least one sample");
    std::vector<CylPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const std::uint64_t start = sequence_start(seed);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t idx = start + static_cast<std::uint64_t>(i);
        const double rho = a.r_inner() + a.gap() * num::halton(idx, 2);
        const double theta = two_pi * num::halton(idx, 3);
        const double z = a.gap() * (2.0 * num::halton(idx, 5) - 1.0);
        pts.emplace_back(rho, theta, z);
    }
    return pts;
}

std::vector<CylPoint> sample_wall(const Annulus& a, Wall wall, int n,
                                  std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need at least one sample");
    const double radius = wall_data(a, wall).radius;
    std::vector<CylPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const std::uint64_t start = sequence_start(seed);
    for (int i = 0; i < n; ++i) {
        const std::uint64_t idx = start + static_cast<std::uint64_t>(i);
        const double theta = two_pi * num::halton(idx, 2);
        const double z = 2.0 * a.gap() * (2.0 * num::halton(idx, 3) - 1.0);
        pts.emplace_back(radius, theta, z);
    }
    return pts;
}

ResidualReport ns_residual_closed(const FlowSpec& spec, const Annulus& a,
                                  std::span<const CylPoint> points,
                                  std::uint64_t seed) {
    ResidualReport report;
    report.seed = seed;
    report.sample_points.assign(points.begin(), points.end());
    report.momentum_residual.reserve(points.size());
    report.divergence.reserve(points.size());

    for (const CylPoint& p : points) {
        require_strict_interior(a, p);
        const auto r = assemble_residual(p.rho, closed_form_bundle(spec, a, p.rho));
        report.momentum_residual.push_back({r[0], r[1], r[2]});
        report.divergence.push_back(r[3]);
        for (int e = 0; e < 4; ++e) {
            report.per_equation_max[static_cast<std::size_t>(e)] =
                std::max(report.per_equation_max[static_cast<std::size_t>(e)],
                         std::abs(r[static_cast<std::size_t>(e)]));
        }
    }
    report.max_abs = *std::max_element(report.per_equation_max.begin(),
                                       report.per_equation_max.end());
    return report;
}

FlowField make_flow_field(const FlowSpec& spec, const Annulus& a) {
    return FlowField{
        [spec, a](const CylPoint& p) { return velocity(spec, a, p); },
        [spec, a](const CylPoint& p) { return pressure(spec, a, p); },
    };
}

double default_fd_step(const Annulus& a) { return 1e-4 * a.gap(); }

double FdResidual::max_abs() const {
    double m = std::abs(divergence);
    for (double v : momentum) m = std::max(m, std::abs(v));
    return m;
}

FdResidual ns_residual_fd(const FlowField& field, const Annulus& a,
                          const CylPoint& p, double h) {
    require_fd_margin(a, p, h);

    const auto v = [&](double dr, double dt, double dz) {
        return field.velocity(shifted(p, dr, dt, dz));
    };
    const auto q = [&](double dr, double dt, double dz) {
        return field.pressure(shifted(p, dr, dt, dz));
    };

    const double inv_2h = 0.5 / h;
    const double inv_h2 = 1.0 / (h * h);

    const CylVector uc = v(0, 0, 0);
    const CylVector u_rp = v(h, 0, 0), u_rm = v(-h, 0, 0);
    const CylVector u_tp = v(0, h, 0), u_tm = v(0, -h, 0);
    const CylVector u_zp = v(0, 0, h), u_zm = v(0, 0, -h);

    const auto diff1 = [inv_2h](const CylVector& plus, const CylVector& minus) {
        return CylVector{(plus.v_rho - minus.v_rho) * inv_2h,
                         (plus.v_theta - minus.v_theta) * inv_2h,
                         (plus.v_z - minus.v_z) * inv_2h};
    };
    const auto diff2 = [inv_h2, &uc](const CylVector& plus, const CylVector& minus) {
        return CylVector{(plus.v_rho - 2.0 * uc.v_rho + minus.v_rho) * inv_h2,
                         (plus.v_theta - 2.0 * uc.v_theta + minus.v_theta) * inv_h2,
                         (plus.v_z - 2.0 * uc.v_z + minus.v_z) * inv_h2};
    };

    DerivativeBundle d{};
    d.u = uc;
    d.d_rho = diff1(u_rp, u_rm);
    d.d_theta = diff1(u_tp, u_tm);
    d.d_z = diff1(u_zp, u_zm);
    d.d2_rho = diff2(u_rp, u_rm);
    d.d2_theta = diff2(u_tp, u_tm);
    d.d2_z = diff2(u_zp, u_zm);
    d.p_rho = (q(h, 0, 0) - q(-h, 0, 0)) * inv_2h;
    d.p_theta = (q(0, h, 0) - q(0, -h, 0)) * inv_2h;
    d.p_z = (q(0, 0, h) - q(0, 0, -h)) * inv_2h;

    const auto r = assemble_residual(p.rho, d);
    return FdResidual{{r[0], r[1], r[2]}, r[3]};
}

double fd_divergence(const std::function<CylVector(const CylPoint&)>& v,
                     const Annulus& a, const CylPoint& p, double h) {
    require_fd_margin(a, p, h);
    const double inv_2h = 0.5 / h;
    const CylVector uc = v(p);
    const double drho = (v(shifted(p, h, 0, 0)).v_rho - v(shifted(p, -h, 0, 0)).v_rho) * inv_2h;
    const double dtheta =
        (v(shifted(p, 0, h, 0)).v_theta - v(shifted(p, 0, -h, 0)).v_theta) * inv_2h;
    const double dz = (v(shifted(p, 0, 0, h)).v_z - v(shifted(p, 0, 0, -h)).v_z) * inv_2h;
    return drho + uc.v_rho / p.rho + dtheta / p.rho + dz;
}

CylVector fd_curl(const std::function<CylVector(const CylPoint&)>& v,
                  const Annulus& a, const CylPoint& p, double h) {
    require_fd_margin(a, p, h);
    const double inv_2h = 0.5 / h;
    const CylVector uc = v(p);
    const CylVector u_rp = v(shifted(p, h, 0, 0)), u_rm = v(shifted(p, -h, 0, 0));
    const CylVector u_tp = v(shifted(p, 0, h, 0)), u_tm = v(shifted(p, 0, -h, 0));
    const CylVector u_zp = v(shifted(p, 0, 0, h)), u_zm = v(shifted(p, 0, 0, -h));

    const double dz_dtheta = (u_tp.v_z - u_tm.v_z) * inv_2h;
    const double dtheta_dz = (u_zp.v_theta - u_zm.v_theta) * inv_2h;
    const double drho_dz = (u_zp.v_rho - u_zm.v_rho) * inv_2h;
    const double dz_drho = (u_rp.v_z - u_rm.v_z) * inv_2h;
    const double dtheta_drho = (u_rp.v_theta - u_rm.v_theta) * inv_2h;
    const double drho_dtheta = (u_tp.v_rho - u_tm.v_rho) * inv_2h;

    return {dz_dtheta / p.rho - dtheta_dz,
            drho_dz - dz_drho,
            dtheta_drho + uc.v_theta / p.rho - drho_dtheta / p.rho};
}

BoundaryReport boundary_check(const FlowSpec& spec, const Annulus& a,
                              int n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");

    BoundaryReport report;
    report.n_samples = n_samples;

    const Wall moving = moving_wall(spec.family);
    const Wall resting = resting_wall(spec.family);
    const auto moving_pts = sample_wall(a, moving, n_samples, seed);
    const auto resting_pts = sample_wall(a, resting, n_samples, seed + 1);

    const auto push = [&report](std::string name, Wall wall, double violation) {
        report.conditions.push_back({std::move(name), wall, violation});
        report.max_violation = std::max(report.max_violation, violation);
    };

    // Resting wall carries homogeneous Dirichlet data for every family.
    double rest_rho = 0.0, rest_theta = 0.0, rest_z = 0.0;
    for (const CylPoint& p : resting_pts) {
        const CylVector u = velocity(spec, a, p);
        rest_rho = std::max(rest_rho, std::abs(u.v_rho));
        rest_theta = std::max(rest_theta, std::abs(u.v_theta));
        rest_z = std::max(rest_z, std::abs(u.v_z));
    }
    push("resting_wall_u_rho", resting, rest_rho);
    push("resting_wall_u_theta", resting, rest_theta);
    push("resting_wall_u_z", resting, rest_z);

    if (is_dirichlet(spec.family)) {
        double m_rho = 0.0, m_theta = 0.0, m_z = 0.0;
        for (const CylPoint& p : moving_pts) {
            const CylVector u = velocity(spec, a, p);
            m_rho = std::max(m_rho, std::abs(u.v_rho));
            m_theta = std::max(m_theta, std::abs(u.v_theta - spec.alpha));
            m_z = std::max(m_z, std::abs(u.v_z));
        }
        push("moving_wall_u_rho", moving, m_rho);
        push("moving_wall_u_theta_data", moving, m_theta);
        push("moving_wall_u_z", moving, m_z);
        return report;
    }

    // Vorticity families: impermeability plus matching of the tangential
    // curl components with the curl of the Dirichlet spiral flow carrying
    // the same (alpha, beta) on the moving wall.
    const double wall_r = wall_data(a, moving).radius;
    const FlowSpec source(moving == Wall::inner
                              ? FlowFamily::spiral_poiseuille_inner_rotating
                              : FlowFamily::spiral_poiseuille_outer_rotating,
                          spec.alpha, spec.beta);
    const CylVector target =
        vorticity(source, a, CylPoint{wall_r, 0.0, 0.0});

    double imp = 0.0, robin = 0.0, neumann = 0.0;
    for (const CylPoint& p : moving_pts) {
        const RadialState s = radial_state(spec, a, p.rho);
        imp = std::max(imp, std::abs(velocity(spec, a, p).v_rho));
        // (curl u)_z = u_theta/rho + u_theta'
        robin = std::max(robin, std::abs(s.u_theta / wall_r + s.du_theta -
                                         target.v_z));
        // (curl u)_theta = -u_z'
        neumann = std::max(neumann, std::abs(-s.du_z - target.v_theta));
    }
    push("moving_wall_impermeability", moving, imp);
    push("moving_wall_curl_z_robin", moving, robin);
    push("moving_wall_curl_theta_neumann", moving, neumann);
    return report;
}

NavierSlipCheck navier_slip_identity(const FlowSpec& spec, const Annulus& a,
                                     int n_samples) {
    return navier_slip_identity(spec, a, n_samples, moving_wall(spec.family));
}

NavierSlipCheck navier_slip_identity(const FlowSpec& spec, const Annulus& a,
                                     int n_samples, Wall wall) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    const WallData wd = wall_data(a, wall);

    NavierSlipCheck check;
    check.wall = wall;

    for (const CylPoint& p : sample_wall(a, wall, n_samples)) {
        const RadialState s = radial_state(spec, a, p.rho);
        if (std::abs(velocity(spec, a, p).v_rho) > 1e-14) {
            throw std::invalid_argument("identity needs u . nu = 0 on the wall");
        }

        // Velocity gradient in the cylindrical frame; the families depend on
        // rho only, so the tangential-derivative entries reduce to the frame
        // terms.
        const double g[3][3] = {
            {0.0, -s.u_theta / wd.radius, 0.0},
            {s.du_theta, 0.0, 0.0},
            {s.du_z, 0.0, 0.0},
        };

        const double c = std::cos(p.theta), sn = std::sin(p.theta);
        const double rot[3][3] = {{c, -sn, 0.0}, {sn, c, 0.0}, {0.0, 0.0, 1.0}};

        // G_cart = R G R^T
        double gc[3][3]{};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double acc = 0.0;
                for (int k = 0; k < 3; ++k) {
                    for (int l = 0; l < 3; ++l) {
                        acc += rot[i][k] * g[k][l] * rot[j][l];
                    }
                }
                gc[i][j] = acc;
            }
        }

        const double nu[3] = {wd.normal_sign * c, wd.normal_sign * sn, 0.0};

        // 2 [D(u) nu]_tau with D = (G + G^T)/2.
        double dnu[3];
        for (int i = 0; i < 3; ++i) {
            dnu[i] = 0.0;
            for (int j = 0; j < 3; ++j) {
                dnu[i] += 0.5 * (gc[i][j] + gc[j][i]) * nu[j];
            }
        }
        const double dn_dot_nu = dnu[0] * nu[0] + dnu[1] * nu[1] + dnu[2] * nu[2];
        double strain_tau[3];
        for (int i = 0; i < 3; ++i) strain_tau[i] = 2.0 * (dnu[i] - dn_dot_nu * nu[i]);

        // (curl u) x nu in the cartesian frame.
        const CylVector w_cyl = vorticity(spec, a, p);
        const CartVector w = frame_to_cartesian(p.theta, w_cyl);
        const double curl_x_nu[3] = {w.y * nu[2] - w.z * nu[1],
                                     w.z * nu[0] - w.x * nu[2],
                                     w.x * nu[1] - w.y * nu[0]};

        // Azimuthal geometric friction, signed with the normal orientation.
        const double friction = wd.normal_sign * 2.0 * s.u_theta / wd.radius;
        const double e_theta[3] = {-sn, c, 0.0};

        for (int i = 0; i < 3; ++i) {
            const double rhs = strain_tau[i] + friction * e_theta[i];
            check.max_violation =
                std::max(check.max_violation, std::abs(curl_x_nu[i] - rhs));
        }
        check.friction_term = std::abs(2.0 * s.u_theta / wd.radius);
    }
    return check;
}

CylVector counterexample_field(const CylPoint& p) {
    if (!(p.rho > 0.0)) {
        throw std::invalid_argument("counterexample field undefined at rho = 0");
    }
    return {0.0, -1.0 / p.rho, 0.0};
}

} // namespace couette
