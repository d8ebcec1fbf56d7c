#pragma once

#include <functional>
#include <span>
#include <vector>

#include "couette/geometry.hpp"

namespace couette {

/// Computable spectral-gap bounds for the annulus.
///   lower_square  pi^2 / (2 R2^2)
///   lower_radial  8 / ((R2^2 - R1^2) log(R2/R1))
///   lower_best    max of the two
///   upper         10 / (R2 - R1)^2
///   curl_factor   1 - log(R2/R1); positive exactly when R2/R1 < e
struct BoundSet {
    double lower_square = 0.0;
    double lower_radial = 0.0;
    double lower_best = 0.0;
    double upper = 0.0;
    double curl_factor = 0.0;
};

BoundSet bound_set(const Annulus& a);

/// Rayleigh quotient of the compactly supported test field
///   v = (1 - eps |z|)^+ (R2 - rho)(rho - R1)
/// pointing along e_x. The numeric quotient uses a midpoint tensor rule with
/// cells aligned to the kinks of the z profile; the closed forms are
///   quotient        3 eps^2 + 10 / (R2 - R1)^2
///   |v|^2           pi/(45 eps) (R2 + R1)(R2 - R1)^5
///   |grad v|^2      2 pi/(9 eps) (R2+R1)(R2-R1)^3 + pi eps/15 (R2+R1)(R2-R1)^5
/// Either way the quotient tends to 10/(R2-R1)^2 as eps -> 0, which is the
/// source of the upper bound in BoundSet.
struct VEpsilonQuotient {
    double numeric_quotient = 0.0;
    double closed_quotient = 0.0;
    double numeric_l2_sq = 0.0;
    double closed_l2_sq = 0.0;
    double numeric_grad_sq = 0.0;
    double closed_grad_sq = 0.0;
};

VEpsilonQuotient v_epsilon_rayleigh(const Annulus& a, double eps,
                                    int n_rho = 2048, int n_z = 2048);

using VectorField = std::function<CylVector(const CylPoint&)>;

enum class QuotientForm { gradient, curl };

struct RayleighGrid {
    int n_rho = 128;
    int n_theta = 128;
    int n_z = 128;
};

/// Discrete Rayleigh quotient |D v|^2 / |v|^2 (D = gradient or curl) of an
/// arbitrary field over the truncated annulus |z| <= z_halfwidth. Midpoint
/// quadrature on the tensor grid with half-step central differences at the
/// cell centers; z-slab partials are combined by pairwise reduction. Without
/// periodic_z the field must be compactly supported inside the truncation
/// (checked by sampling the caps); with periodic_z the z direction wraps
/// with period 2 z_halfwidth.
double discrete_rayleigh(const VectorField& field, const Annulus& a,
                         double z_halfwidth, const RayleighGrid& grid,
                         QuotientForm form, bool periodic_z = false);

/// Coefficients of the magnitude constant split by parameter:
///   phi_rotational  R2^4 / ((R2^2 - R1^2)^2 R1^2)
///   phi_axial       ((R2^2 - R1^2)/(R1 log(R2^2/R1^2)) - R1)^2
double phi_rotational(const Annulus& a);
double phi_axial(const Annulus& a);

struct PhiRow {
    double r1 = 0.0;
    double r2 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double scaled_phi1 = 0.0; // (R2 - R1)^2 phi1
};

std::vector<PhiRow> phi_asymptotics(std::span<const Annulus> annuli);

} // namespace couette
