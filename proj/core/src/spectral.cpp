#include "couette/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "couette/flows.hpp"

namespace couette {

namespace {

using cdouble = std::complex<double>;

// Thomas solve of the flux-conservative stencil
//   [rho_{i-1/2} u_{i-1} - (rho_{i-1/2}+rho_{i+1/2}) u_i + rho_{i+1/2} u_{i+1}] / h^2
//     = rho_i * rhs_i
// on the interior, with the two boundary rows supplied by the caller in the
// already-reduced tridiagonal form.
struct Tridiag {
    std::vector<double> sub, diag, sup, rhs;

    std::vector<double> solve() && {
        const std::size_t n = diag.size();
        for (std::size_t i = 1; i < n; ++i) {
            if (diag[i - 1] == 0.0) {
                throw std::runtime_error("singular axial system");
            }
            const double w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        if (diag[n - 1] == 0.0) throw std::runtime_error("singular axial system");
        std::vector<double> x(n);
        x[n - 1] = rhs[n - 1] / diag[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) {
            x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i];
        }
        return x;
    }
};

double max_error_against(const std::vector<double>& values,
                         const std::vector<double>& nodes,
                         const std::function<double(double)>& exact) {
    double err = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        err = std::max(err, std::abs(values[i] - exact(nodes[i])));
    }
    return err;
}

} // namespace

Grid1D::Grid1D(const Annulus& a, int n) {
    if (n < 8) throw std::invalid_argument("Grid1D needs at least 8 nodes");
    nodes_.resize(static_cast<std::size_t>(n));
    h_ = a.gap() / (n - 1);
    for (int i = 0; i < n; ++i) {
        nodes_[static_cast<std::size_t>(i)] = a.r_inner() + i * h_;
    }
    nodes_.front() = a.r_inner();
    nodes_.back() = a.r_outer();
}

BvpSolution solve_uz_dirichlet(const Annulus& a, double beta, const Grid1D& grid) {
    const int n = grid.n();
    const double h = grid.h();
    const auto& x = grid.nodes();

    Tridiag sys;
    sys.sub.assign(static_cast<std::size_t>(n), 0.0);
    sys.diag.assign(static_cast<std::size_t>(n), 1.0);
    sys.sup.assign(static_cast<std::size_t>(n), 0.0);
    sys.rhs.assign(static_cast<std::size_t>(n), 0.0);

    for (int i = 1; i + 1 < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double rho_m = x[k] - 0.5 * h;
        const double rho_p = x[k] + 0.5 * h;
        sys.sub[k] = rho_m / (h * h);
        sys.diag[k] = -(rho_m + rho_p) / (h * h);
        sys.sup[k] = rho_p / (h * h);
        sys.rhs[k] = x[k] * beta;
    }

    BvpSolution out;
    out.values = std::move(sys).solve();
    out.max_error = max_error_against(out.values, x, [&](double rho) {
        return beta * poiseuille_profile(a, rho);
    });
    return out;
}

BvpSolution solve_uz_robin(const Annulus& a, double beta, double gamma,
                           const Grid1D& grid) {
    const int n = grid.n();
    const double h = grid.h();
    const auto& x = grid.nodes();

    // Prescribed slope at the inner wall: the sliding log term contributes
    // -(slide)/R1 and the pressure-driven part has zero slope there.
    const double slide = beta * a.r_inner() * (-poiseuille_profile_d1(a, a.r_inner()));
    const double slope = -slide / a.r_inner();

    Tridiag sys;
    sys.sub.assign(static_cast<std::size_t>(n), 0.0);
    sys.diag.assign(static_cast<std::size_t>(n), 1.0);
    sys.sup.assign(static_cast<std::size_t>(n), 0.0);
    sys.rhs.assign(static_cast<std::size_t>(n), 0.0);

    for (int i = 1; i + 1 < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double rho_m = x[k] - 0.5 * h;
        const double rho_p = x[k] + 0.5 * h;
        sys.sub[k] = rho_m / (h * h);
        sys.diag[k] = -(rho_m + rho_p) / (h * h);
        sys.sup[k] = rho_p / (h * h);
        sys.rhs[k] = x[k] * gamma;
    }

    // One-sided second-order slope at R1: (-3 u0 + 4 u1 - u2) / (2h) = slope.
    // Eliminate u2 with the first interior row to stay tridiagonal.
    {
        const double rho_m = x[1] - 0.5 * h;
        const double rho_p = x[1] + 0.5 * h;
        const double a0 = -3.0 / (2.0 * h);
        const double a1 = 4.0 / (2.0 * h);
        const double a2 = -1.0 / (2.0 * h);
        // Row 1: rho_m u0 - (rho_m + rho_p) u1 + rho_p u2 = h^2-scaled rhs.
        const double w = a2 / (rho_p / (h * h));
        sys.diag[0] = a0 - w * (rho_m / (h * h));
        sys.sup[0] = a1 + w * ((rho_m + rho_p) / (h * h));
        sys.rhs[0] = slope - w * (x[1] * gamma);
    }

    BvpSolution out;
    out.values = std::move(sys).solve();

    const FlowSpec reference(FlowFamily::spiral_pc_vorticity_on_inner, 0.0, beta,
                             gamma);
    out.max_error = max_error_against(out.values, x, [&](double rho) {
        return radial_state(reference, a, rho).u_z;
    });
    return out;
}

std::vector<double> uniform_alpha_grid(double lo, double hi, int n) {
    if (n < 2 || !(hi > lo)) throw std::invalid_argument("bad alpha grid");
    std::vector<double> g(static_cast<std::size_t>(n));
    const double h = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + i * h;
    return g;
}

SLScanResult sl_scan(const Annulus& a, int k, std::span<const double> alpha_grid,
                     const Grid1D& grid) {
    if (k == 0) throw std::invalid_argument("sl_scan requires a nonzero mode number");
    if (alpha_grid.empty()) throw std::invalid_argument("empty alpha grid");

    const int n = grid.n();
    const double h = grid.h();
    const auto& x = grid.nodes();
    const int m = n - 2; // interior unknowns

    // Real part: flux-conservative second difference minus k^2/rho.
    std::vector<cdouble> sub(static_cast<std::size_t>(m - 1));
    std::vector<cdouble> diag0(static_cast<std::size_t>(m));
    std::vector<cdouble> sup(static_cast<std::size_t>(m - 1));
    std::vector<double> weight(static_cast<std::size_t>(m));

    const double coeff = static_cast<double>(k) * a.r_inner() / a.sq_span();
    for (int i = 0; i < m; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        const double rho = x[static_cast<std::size_t>(i + 1)];
        const double rho_m = rho - 0.5 * h;
        const double rho_p = rho + 0.5 * h;
        diag0[idx] = -(rho_m + rho_p) / (h * h) -
                     static_cast<double>(k) * static_cast<double>(k) / rho;
        if (i > 0) sub[idx - 1] = rho_m / (h * h);
        if (i + 1 < m) sup[idx] = rho_p / (h * h);
        weight[idx] = coeff * (rho - a.r_outer() * a.r_outer() / rho);
    }

    SLScanResult result;
    result.k = k;
    result.n = n;
    result.alpha_grid.assign(alpha_grid.begin(), alpha_grid.end());
    result.sigma_min.reserve(alpha_grid.size());

    std::vector<cdouble> diag(diag0.size());
    for (double alpha : alpha_grid) {
        for (std::size_t i = 0; i < diag.size(); ++i) {
            diag[i] = diag0[i] + cdouble(0.0, alpha * weight[i]);
        }
        const double sigma = detail::smallest_singular_value(sub, diag, sup);
        if (!(sigma > 0.0)) {
            throw std::runtime_error("sl_scan: non-positive singular value");
        }
        result.sigma_min.push_back(sigma);
    }
    return result;
}

namespace detail {

TridiagonalLU::TridiagonalLU(std::vector<cdouble> sub, std::vector<cdouble> diag,
                             std::vector<cdouble> sup)
    : n_(static_cast<int>(diag.size())),
      dl_(std::move(sub)),
      d_(std::move(diag)),
      du_(std::move(sup)),
      du2_(n_ > 2 ? static_cast<std::size_t>(n_ - 2) : 0, cdouble{}),
      pivot_(static_cast<std::size_t>(n_), 0) {
    if (n_ < 1 || static_cast<int>(dl_.size()) != n_ - 1 ||
        static_cast<int>(du_.size()) != n_ - 1) {
        throw std::invalid_argument("inconsistent tridiagonal sizes");
    }

    // Partial-pivoted elimination in banded storage (one fill superdiagonal).
    for (int i = 0; i < n_ - 1; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        if (i + 2 < n_) du2_[idx] = 0.0;
        if (std::abs(d_[idx]) >= std::abs(dl_[idx])) {
            pivot_[idx] = i;
            if (d_[idx] == 0.0) throw std::runtime_error("singular tridiagonal matrix");
            const cdouble mult = dl_[idx] / d_[idx];
            dl_[idx] = mult; // store the multiplier
            d_[idx + 1] -= mult * du_[idx];
        } else {
            pivot_[idx] = i + 1;
            const cdouble mult = d_[idx] / dl_[idx];
            d_[idx] = dl_[idx];
            dl_[idx] = mult;
            const cdouble tmp = du_[idx];
            du_[idx] = d_[idx + 1];
            d_[idx + 1] = tmp - mult * d_[idx + 1];
            if (i + 2 < n_) {
                du2_[idx] = du_[idx + 1];
                du_[idx + 1] = -mult * du_[idx + 1];
            }
        }
    }
    pivot_[static_cast<std::size_t>(n_ - 1)] = n_ - 1;
    if (d_[static_cast<std::size_t>(n_ - 1)] == 0.0) {
        throw std::runtime_error("singular tridiagonal matrix");
    }
}

std::vector<cdouble> TridiagonalLU::solve(std::vector<cdouble> b) const {
    // Forward substitution with the recorded row exchanges.
    for (int i = 0; i < n_ - 1; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        if (pivot_[idx] != i) std::swap(b[idx], b[idx + 1]);
        b[idx + 1] -= dl_[idx] * b[idx];
    }
    // Back substitution through the two superdiagonals.
    for (int i = n_ - 1; i >= 0; --i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        cdouble acc = b[idx];
        if (i + 1 < n_) acc -= du_[idx] * b[idx + 1];
        if (i + 2 < n_) acc -= du2_[idx] * b[idx + 2];
        b[idx] = acc / d_[idx];
    }
    return b;
}

std::vector<cdouble> TridiagonalLU::solve_adjoint(std::vector<cdouble> b) const {
    // Solve A^H x = b with A = P^T L U  =>  A^H = U^H L^H P.
    // First U^H y = b (lower triangular with two subdiagonals).
    for (int i = 0; i < n_; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        cdouble acc = b[idx];
        if (i >= 1) acc -= std::conj(du_[idx - 1]) * b[idx - 1];
        if (i >= 2) acc -= std::conj(du2_[idx - 2]) * b[idx - 2];
        b[idx] = acc / std::conj(d_[idx]);
    }
    // Then L^H z = y (unit upper bidiagonal), applying the exchanges last.
    for (int i = n_ - 2; i >= 0; --i) {
        const std::size_t idx = static_cast<std::size_t>(i);
        b[idx] -= std::conj(dl_[idx]) * b[idx + 1];
        if (pivot_[idx] != i) std::swap(b[idx], b[idx + 1]);
    }
    return b;
}

double smallest_singular_value(const std::vector<cdouble>& sub,
                               const std::vector<cdouble>& diag,
                               const std::vector<cdouble>& sup) {
    const std::size_t n = diag.size();
    const TridiagonalLU lu(sub, diag, sup);

    // Deterministic pseudo-random start vector.
    std::vector<cdouble> x(n);
    std::uint64_t state = 0x9e3779b97f4a7c15ULL;
    for (auto& v : x) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double re = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        const double im = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
        v = cdouble(re, im);
    }

    const auto norm = [](const std::vector<cdouble>& v) {
        double s = 0.0;
        for (const cdouble& c : v) s += std::norm(c);
        return std::sqrt(s);
    };

    const auto apply = [&](const std::vector<cdouble>& v) {
        std::vector<cdouble> y(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            cdouble acc = diag[i] * v[i];
            if (i > 0) acc += sub[i - 1] * v[i - 1];
            if (i + 1 < v.size()) acc += sup[i] * v[i + 1];
            y[i] = acc;
        }
        return y;
    };

    double nx = norm(x);
    for (auto& v : x) v /= nx;

    // The estimate decreases toward the smallest singular value with rate
    // (sigma_1/sigma_2)^2 per step. Clustered spectra converge slowly in the
    // vector but the estimate plateaus inside the cluster, so a windowed
    // stagnation test is used as the secondary acceptance.
    double sigma = 0.0, sigma_prev = -1.0;
    double window_ref = -1.0;
    constexpr int window = 50;
    for (int iter = 0; iter < 3000; ++iter) {
        std::vector<cdouble> y = lu.solve(lu.solve_adjoint(x));
        const double ny = norm(y);
        if (!(ny > 0.0) || !std::isfinite(ny)) {
            throw std::runtime_error("inverse iteration broke down");
        }
        for (auto& v : y) v /= ny;
        x = std::move(y);
        sigma = norm(apply(x));
        if (sigma_prev >= 0.0 &&
            std::abs(sigma - sigma_prev) <= 1e-13 * std::max(sigma, 1e-300)) {
            return sigma;
        }
        sigma_prev = sigma;
        if (iter % window == 0) {
            if (window_ref >= 0.0 &&
                std::abs(sigma - window_ref) <= 1e-9 * std::max(sigma, 1e-300)) {
                return sigma;
            }
            window_ref = sigma;
        }
    }
    throw std::runtime_error("smallest_singular_value: no convergence");
}

} // namespace detail

} // namespace couette
