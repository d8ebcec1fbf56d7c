#include "couette/functional_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "couette/numerics.hpp"

namespace couette {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;

struct CellDerivatives {
    CylVector v;
    CylVector d_rho, d_theta, d_z;
};

double grad_norm_sq(double rho, const CellDerivatives& c) {
    const double inv_rho = 1.0 / rho;
    const double g[9] = {
        c.d_rho.v_rho,   inv_rho * c.d_theta.v_rho - c.v.v_theta * inv_rho, c.d_z.v_rho,
        c.d_rho.v_theta, inv_rho * c.d_theta.v_theta + c.v.v_rho * inv_rho, c.d_z.v_theta,
        c.d_rho.v_z,     inv_rho * c.d_theta.v_z,                           c.d_z.v_z,
    };
    double s = 0.0;
    for (double x : g) s += x * x;
    return s;
}

double curl_norm_sq(double rho, const CellDerivatives& c) {
    const double inv_rho = 1.0 / rho;
    const double w_rho = inv_rho * c.d_theta.v_z - c.d_z.v_theta;
    const double w_theta = c.d_z.v_rho - c.d_rho.v_z;
    const double w_z = c.d_rho.v_theta + c.v.v_theta * inv_rho -
                       inv_rho * c.d_theta.v_rho;
    return w_rho * w_rho + w_theta * w_theta + w_z * w_z;
}

} // namespace

BoundSet bound_set(const Annulus& a) {
    BoundSet b;
    b.lower_square = pi * pi / (2.0 * a.r_outer() * a.r_outer());
    b.lower_radial = 8.0 / (a.sq_span() * a.log_ratio());
    b.lower_best = std::max(b.lower_square, b.lower_radial);
    b.upper = 10.0 / (a.gap() * a.gap());
    b.curl_factor = 1.0 - a.log_ratio();
    return b;
}

VEpsilonQuotient v_epsilon_rayleigh(const Annulus& a, double eps, int n_rho,
                                    int n_z) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (n_rho < 2 || n_z < 2) throw std::invalid_argument("grid too coarse");

    const double r1 = a.r_inner(), r2 = a.r_outer();
    const double h_rho = a.gap() / n_rho;
    // Integrate z over [0, 1/eps] and double; the cut at z = 0 and the
    // support edge z = 1/eps are then exact cell boundaries.
    const double z_top = 1.0 / eps;
    const double h_z = z_top / n_z;

    std::vector<double> l2_slabs(static_cast<std::size_t>(n_z));
    std::vector<double> grad_slabs(static_cast<std::size_t>(n_z));

    for (int k = 0; k < n_z; ++k) {
        const double z = (k + 0.5) * h_z;
        const double axial = 1.0 - eps * z;
        double l2 = 0.0, grad = 0.0;
        for (int i = 0; i < n_rho; ++i) {
            const double rho = r1 + (i + 0.5) * h_rho;
            const double radial = (r2 - rho) * (rho - r1);
            const double val = axial * radial;
            const double d_rho = axial * (r1 + r2 - 2.0 * rho);
            const double d_z = -eps * radial;
            l2 += val * val * rho;
            grad += (d_rho * d_rho + d_z * d_z) * rho;
        }
        l2_slabs[static_cast<std::size_t>(k)] = l2;
        grad_slabs[static_cast<std::size_t>(k)] = grad;
    }

    const double cell = h_rho * h_z;
    // Factor 2 for the mirrored z < 0 half, 2 pi for the azimuthal integral.
    const double measure = 2.0 * two_pi * cell;

    VEpsilonQuotient q;
    q.numeric_l2_sq = measure * num::pairwise_sum(l2_slabs);
    q.numeric_grad_sq = measure * num::pairwise_sum(grad_slabs);
    if (!(q.numeric_l2_sq > 0.0)) {
        throw std::runtime_error("v_epsilon quadrature degenerated to zero");
    }
    q.numeric_quotient = q.numeric_grad_sq / q.numeric_l2_sq;

    const double gap = a.gap();
    const double sum = r1 + r2;
    // |v|^2: the z profile integrates to 1/(3 eps) per half, the radial
    // factor to (R1+R2)(R2-R1)^5 / 60.
    q.closed_l2_sq = pi / (45.0 * eps) * sum * std::pow(gap, 5);
    // |grad v|^2: radial part as above with (R1+R2-2 rho)^2; the axial part
    // is the constant eps^2 over the support of length 2/eps.
    q.closed_grad_sq = 2.0 * pi / (9.0 * eps) * sum * std::pow(gap, 3) +
                       pi * eps / 15.0 * sum * std::pow(gap, 5);
    q.closed_quotient = 3.0 * eps * eps + 10.0 / (gap * gap);
    return q;
}

double discrete_rayleigh(const VectorField& field, const Annulus& a,
                         double z_halfwidth, const RayleighGrid& grid,
                         QuotientForm form, bool periodic_z) {
    if (!(z_halfwidth > 0.0)) throw std::invalid_argument("z_halfwidth must be positive");
    if (grid.n_rho < 4 || grid.n_theta < 4 || grid.n_z < 4) {
        throw std::invalid_argument("rayleigh grid too coarse");
    }

    const double r1 = a.r_inner();
    const double h_rho = a.gap() / grid.n_rho;
    const double h_theta = two_pi / grid.n_theta;
    const double h_z = 2.0 * z_halfwidth / grid.n_z;
    const double period = 2.0 * z_halfwidth;

    const auto eval = [&](double rho, double theta, double z) {
        if (periodic_z) {
            z = std::remainder(z, period);
        }
        return field(CylPoint{rho, theta, z});
    };

    if (!periodic_z) {
        // The quotient over a truncation is only meaningful for fields that
        // vanish before the caps; sample the cap planes to enforce it.
        double scale = 0.0, cap = 0.0;
        for (int i = 0; i < 16; ++i) {
            const double rho = r1 + (i + 0.5) * a.gap() / 16.0;
            for (int j = 0; j < 16; ++j) {
                const double theta = (j + 0.5) * two_pi / 16.0;
                scale = std::max(scale, eval(rho, theta, 0.0).norm());
                cap = std::max(cap, eval(rho, theta, z_halfwidth).norm());
                cap = std::max(cap, eval(rho, theta, -z_halfwidth).norm());
            }
        }
        if (cap > 1e-12 * std::max(1.0, scale)) {
            throw std::invalid_argument(
                "field support exceeds the z truncation");
        }
    }

    std::vector<double> num_slabs(static_cast<std::size_t>(grid.n_z));
    std::vector<double> den_slabs(static_cast<std::size_t>(grid.n_z));

    for (int k = 0; k < grid.n_z; ++k) {
        const double z = -z_halfwidth + (k + 0.5) * h_z;
        double num = 0.0, den = 0.0;
        for (int i = 0; i < grid.n_rho; ++i) {
            const double rho = r1 + (i + 0.5) * h_rho;
            for (int j = 0; j < grid.n_theta; ++j) {
                const double theta = (j + 0.5) * h_theta;

                CellDerivatives c;
                c.v = eval(rho, theta, z);
                const CylVector rp = eval(rho + 0.5 * h_rho, theta, z);
                const CylVector rm = eval(rho - 0.5 * h_rho, theta, z);
                const CylVector tp = eval(rho, theta + 0.5 * h_theta, z);
                const CylVector tm = eval(rho, theta - 0.5 * h_theta, z);
                const CylVector zp = eval(rho, theta, z + 0.5 * h_z);
                const CylVector zm = eval(rho, theta, z - 0.5 * h_z);
                const auto diff = [](const CylVector& p, const CylVector& m,
                                     double h) {
                    return CylVector{(p.v_rho - m.v_rho) / h,
                                     (p.v_theta - m.v_theta) / h,
                                     (p.v_z - m.v_z) / h};
                };
                c.d_rho = diff(rp, rm, h_rho);
                c.d_theta = diff(tp, tm, h_theta);
                c.d_z = diff(zp, zm, h_z);

                const double q = (form == QuotientForm::gradient)
                                     ? grad_norm_sq(rho, c)
                                     : curl_norm_sq(rho, c);
                num += q * rho;
                den += (c.v.v_rho * c.v.v_rho + c.v.v_theta * c.v.v_theta +
                        c.v.v_z * c.v.v_z) *
                       rho;
            }
        }
        num_slabs[static_cast<std::size_t>(k)] = num;
        den_slabs[static_cast<std::size_t>(k)] = den;
    }

    const double den = num::pairwise_sum(den_slabs);
    if (!(den > 0.0)) {
        throw std::invalid_argument("discrete_rayleigh: field is zero on the grid");
    }
    return num::pairwise_sum(num_slabs) / den;
}

double phi_rotational(const Annulus& a) {
    const double r2sq = a.r_outer() * a.r_outer();
    const double denom = a.sq_span() * a.r_inner();
    return r2sq * r2sq / (denom * denom);
}

double phi_axial(const Annulus& a) {
    const double t = a.sq_span() / (a.r_inner() * 2.0 * a.log_ratio()) - a.r_inner();
    return t * t;
}

std::vector<PhiRow> phi_asymptotics(std::span<const Annulus> annuli) {
    std::vector<PhiRow> rows;
    rows.reserve(annuli.size());
    for (const Annulus& a : annuli) {
        PhiRow row;
        row.r1 = a.r_inner();
        row.r2 = a.r_outer();
        row.phi1 = phi_rotational(a);
        row.phi2 = phi_axial(a);
        row.scaled_phi1 = a.gap() * a.gap() * row.phi1;
        rows.push_back(row);
    }
    return rows;
}

} // namespace couette
