#pragma once

#include <cmath>
#include <utility>

namespace couette {

/// Cylindrical annulus R1 < rho < R2, unbounded in z. All lengths are
/// dimensionless; the kinematic viscosity is one throughout the library.
class Annulus {
public:
    Annulus(double r_inner, double r_outer);

    double r_inner() const { return r1_; }
    double r_outer() const { return r2_; }
    double gap() const { return r2_ - r1_; }
    /// R2^2 - R1^2
    double sq_span() const { return r2_ * r2_ - r1_ * r1_; }
    /// log(R2/R1)
    double log_ratio() const { return std::log(r2_ / r1_); }

    bool contains(double rho) const { return rho >= r1_ && rho <= r2_; }
    bool strictly_contains(double rho) const { return rho > r1_ && rho < r2_; }

private:
    double r1_;
    double r2_;
};

/// Point in cylindrical coordinates. theta is normalized to [0, 2*pi) on
/// construction; rho must be non-negative.
struct CylPoint {
    CylPoint(double rho, double theta, double z);

    double rho;
    double theta;
    double z;
};

/// Vector components in the local orthonormal frame (e_rho, e_theta, e_z).
struct CylVector {
    double v_rho = 0.0;
    double v_theta = 0.0;
    double v_z = 0.0;

    double norm() const {
        return std::sqrt(v_rho * v_rho + v_theta * v_theta + v_z * v_z);
    }
};

struct CartPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct CartVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Radius where the annular Poiseuille profile peaks:
/// sqrt((R2^2 - R1^2) / (2 log(R2/R1))). Lies strictly between R1 and the
/// midpoint of the gap.
double peak_radius(const Annulus& a);

/// Rotate a vector given in the cylindrical frame at azimuth theta into the
/// cartesian frame.
CartVector frame_to_cartesian(double theta, const CylVector& v);
/// Inverse of frame_to_cartesian.
CylVector frame_from_cartesian(double theta, const CartVector& v);

std::pair<CartPoint, CartVector> cyl_to_cart(const CylPoint& p, const CylVector& v);
/// Throws std::invalid_argument on the axis x = y = 0 (azimuth undefined).
std::pair<CylPoint, CylVector> cart_to_cyl(const CartPoint& p, const CartVector& v);

} // namespace couette
