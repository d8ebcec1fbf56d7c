#pragma once

#include <complex>
#include <span>
#include <vector>

#include "couette/geometry.hpp"

namespace couette {

/// Uniform node set on [R1, R2] with exact endpoints; n >= 8.
class Grid1D {
public:
    Grid1D(const Annulus& a, int n);

    int n() const { return static_cast<int>(nodes_.size()); }
    double h() const { return h_; }
    const std::vector<double>& nodes() const { return nodes_; }

private:
    std::vector<double> nodes_;
    double h_;
};

struct BvpSolution {
    std::vector<double> values;
    /// Max-norm error of the discrete solution against the closed form.
    double max_error = 0.0;
};

/// Second-order solve of u'' + u'/rho = beta with u(R1) = u(R2) = 0, using
/// the flux-conservative stencil on rho u'. Compared against the annular
/// Poiseuille closed form.
BvpSolution solve_uz_dirichlet(const Annulus& a, double beta, const Grid1D& grid);

/// Second-order solve of u'' + u'/rho = gamma with a prescribed slope at R1
/// (one-sided second-order stencil, no ghost node) and u(R2) = 0; the slope
/// is the one the sliding axial profile with parameters (beta, gamma)
/// satisfies, and the result is compared against that closed form.
BvpSolution solve_uz_robin(const Annulus& a, double beta, double gamma,
                           const Grid1D& grid);

/// Scan of the azimuthal-mode operator along the imaginary spectral axis:
/// for each alpha, the smallest singular value of the discretized
///   (rho W')' - (k^2/rho) W + i alpha (k R1/(R2^2-R1^2)) (rho - R2^2/rho) W
/// with homogeneous Dirichlet ends. All values positive means no
/// purely-imaginary eigenvalue is visible at this resolution.
struct SLScanResult {
    int k = 0;
    std::vector<double> alpha_grid;
    std::vector<double> sigma_min;
    int n = 0;
};

SLScanResult sl_scan(const Annulus& a, int k, std::span<const double> alpha_grid,
                     const Grid1D& grid);

std::vector<double> uniform_alpha_grid(double lo, double hi, int n);

namespace detail {

/// LU factorization with partial pivoting of a complex tridiagonal matrix,
/// plus solves with the matrix and its conjugate transpose. Fill-in is one
/// extra superdiagonal.
class TridiagonalLU {
public:
    TridiagonalLU(std::vector<std::complex<double>> sub,
                  std::vector<std::complex<double>> diag,
                  std::vector<std::complex<double>> sup);

    std::vector<std::complex<double>> solve(
        std::vector<std::complex<double>> rhs) const;
    std::vector<std::complex<double>> solve_adjoint(
        std::vector<std::complex<double>> rhs) const;

private:
    int n_;
    std::vector<std::complex<double>> dl_, d_, du_, du2_;
    std::vector<int> pivot_;
};

/// Smallest singular value by inverse iteration on the normal matrix,
/// applied through tridiagonal solves. Deterministic start vector.
double smallest_singular_value(const std::vector<std::complex<double>>& sub,
                               const std::vector<std::complex<double>>& diag,
                               const std::vector<std::complex<double>>& sup);

} // namespace detail

} // namespace couette
