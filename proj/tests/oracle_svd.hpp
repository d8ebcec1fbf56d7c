#pragma once

// Test-only brute-force linear algebra: one-sided Jacobi SVD on a dense
// complex matrix. Slow and simple on purpose; used to cross-check the
// production tridiagonal inverse-iteration path.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace oracle {

using cdouble = std::complex<double>;

/// Column-major dense matrix.
struct DenseMatrix {
    int n = 0;
    std::vector<cdouble> a; // n * n

    cdouble& at(int row, int col) { return a[static_cast<std::size_t>(col) * n + row]; }
    const cdouble& at(int row, int col) const {
        return a[static_cast<std::size_t>(col) * n + row];
    }
};

inline DenseMatrix from_tridiagonal(const std::vector<cdouble>& sub,
                                    const std::vector<cdouble>& diag,
                                    const std::vector<cdouble>& sup) {
    DenseMatrix m;
    m.n = static_cast<int>(diag.size());
    m.a.assign(static_cast<std::size_t>(m.n) * m.n, cdouble{});
    for (int i = 0; i < m.n; ++i) {
        m.at(i, i) = diag[static_cast<std::size_t>(i)];
        if (i > 0) m.at(i, i - 1) = sub[static_cast<std::size_t>(i - 1)];
        if (i + 1 < m.n) m.at(i, i + 1) = sup[static_cast<std::size_t>(i)];
    }
    return m;
}

/// All singular values via one-sided Jacobi orthogonalization of columns.
inline std::vector<double> singular_values(DenseMatrix m, int max_sweeps = 60) {
    const int n = m.n;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                cdouble apq{};
                for (int i = 0; i < n; ++i) {
                    app += std::norm(m.at(i, p));
                    aqq += std::norm(m.at(i, q));
                    apq += std::conj(m.at(i, p)) * m.at(i, q);
                }
                const double off = std::abs(apq);
                if (off <= 1e-15 * std::sqrt(app * aqq) || off == 0.0) continue;
                converged = false;

                const cdouble phase = apq / off;
                const double tau = (aqq - app) / (2.0 * off);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (int i = 0; i < n; ++i) {
                    const cdouble vp = m.at(i, p);
                    const cdouble vq = m.at(i, q);
                    m.at(i, p) = c * vp - s * std::conj(phase) * vq;
                    m.at(i, q) = s * phase * vp + c * vq;
                }
            }
        }
    }
    if (!converged) throw std::runtime_error("jacobi svd did not converge");

    std::vector<double> sigma(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        double norm_sq = 0.0;
        for (int i = 0; i < n; ++i) norm_sq += std::norm(m.at(i, q));
        sigma[static_cast<std::size_t>(q)] = std::sqrt(norm_sq);
    }
    return sigma;
}

inline double smallest_singular_value(const std::vector<cdouble>& sub,
                                      const std::vector<cdouble>& diag,
                                      const std::vector<cdouble>& sup) {
    const auto sigma = singular_values(from_tridiagonal(sub, diag, sup));
    double best = sigma.empty() ? 0.0 : sigma.front();
    for (double s : sigma) best = std::min(best, s);
    return best;
}

} // namespace oracle
