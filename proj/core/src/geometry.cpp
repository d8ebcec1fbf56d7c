#include "couette/geometry.hpp"

#include <numbers>
#include <stdexcept>

namespace couette {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double normalize_angle(double theta) {
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0; // fmod can land on 2*pi after the shift
    return t;
}

} // namespace

Annulus::Annulus(double r_inner, double r_outer) : r1_(r_inner), r2_(r_outer) {
    if (!(r_inner > 0.0) || !(r_outer > r_inner)) {
        throw std::invalid_argument("Annulus requires 0 < r_inner < r_outer");
    }
}

CylPoint::CylPoint(double rho_, double theta_, double z_)
    : rho(rho_), theta(normalize_angle(theta_)), z(z_) {
    if (rho_ < 0.0) {
        throw std::invalid_argument("CylPoint requires rho >= 0");
    }
}

double peak_radius(const Annulus& a) {
    return std::sqrt(a.sq_span() / (2.0 * a.log_ratio()));
}

CartVector frame_to_cartesian(double theta, const CylVector& v) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * v.v_rho - s * v.v_theta, s * v.v_rho + c * v.v_theta, v.v_z};
}

CylVector frame_from_cartesian(double theta, const CartVector& v) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * v.x + s * v.y, -s * v.x + c * v.y, v.z};
}

std::pair<CartPoint, CartVector> cyl_to_cart(const CylPoint& p, const CylVector& v) {
    const CartPoint q{p.rho * std::cos(p.theta), p.rho * std::sin(p.theta), p.z};
    return {q, frame_to_cartesian(p.theta, v)};
}

std::pair<CylPoint, CylVector> cart_to_cyl(const CartPoint& p, const CartVector& v) {
    if (p.x == 0.0 && p.y == 0.0) {
        throw std::invalid_argument("cart_to_cyl: azimuth undefined on the axis");
    }
    const double rho = std::hypot(p.x, p.y);
    const double theta = std::atan2(p.y, p.x);
    const CylPoint q{rho, theta, p.z};
    return {q, frame_from_cartesian(q.theta, v)};
}

} // namespace couette
