#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "couette/functional_bounds.hpp"
#include "couette/geometry.hpp"

using namespace couette;

namespace {

constexpr double pi = std::numbers::pi;
const Annulus ref(1.0, 2.0);

/// Divergence-free field vanishing on both walls with compact z support:
/// curl of phi(rho) g(z) e_theta with double wall zeros in phi.
struct SolenoidalTestField {
    Annulus a;
    double z_extent;

    CylVector operator()(const CylPoint& p) const {
        const double r1 = a.r_inner(), r2 = a.r_outer();
        if (std::abs(p.z) >= z_extent) return {};
        const double phi = (p.rho - r1) * (p.rho - r1) * (r2 - p.rho) * (r2 - p.rho);
        const double dphi = 2.0 * (p.rho - r1) * (r2 - p.rho) * (r2 - p.rho) -
                            2.0 * (p.rho - r1) * (p.rho - r1) * (r2 - p.rho);
        const double arg = pi * p.z / (2.0 * z_extent);
        const double g = std::cos(arg) * std::cos(arg);
        const double dg = -pi / (2.0 * z_extent) * std::sin(2.0 * arg);
        return {-phi * dg, 0.0, dphi * g + phi * g / p.rho};
    }
};

} // namespace

TEST_CASE("bound set reference values") {
    const BoundSet b = bound_set(ref);
    CHECK(b.lower_square == doctest::Approx(1.2337006).epsilon(1e-6));
    CHECK(b.lower_radial == doctest::Approx(3.8471868).epsilon(1e-6));
    CHECK(b.lower_best == b.lower_radial);
    CHECK(b.upper == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(b.curl_factor == doctest::Approx(0.30685).epsilon(1e-4));
}

TEST_CASE("curl factor goes negative past ratio e") {
    CHECK(bound_set(Annulus(1.0, 10.0)).curl_factor < 0.0);
    CHECK(bound_set(Annulus(1.0, 2.5)).curl_factor > 0.0);

    // Sign change pinned at ratio e by bisection.
    double lo = 2.0, hi = 4.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (bound_set(Annulus(1.0, mid)).curl_factor > 0.0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(std::exp(1.0)).epsilon(1e-11));
}

TEST_CASE("lower bounds never exceed the test-field upper bound") {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> log_r1(-2.0, 2.0);
    std::uniform_real_distribution<double> log_ratio(1e-5, std::log(1000.0));
    for (int i = 0; i < 10000; ++i) {
        const double r1 = std::exp(log_r1(rng));
        const Annulus a(r1, r1 * std::exp(log_ratio(rng)));
        const BoundSet b = bound_set(a);
        CHECK(b.lower_best <= b.upper);
        CHECK(b.lower_best == std::max(b.lower_square, b.lower_radial));
    }
}

TEST_CASE("gap-scaled radial bound approaches 4 from below near closure") {
    double prev_gap_sq_bound = 0.0;
    for (double gap : {1e-1, 1e-2, 1e-3}) {
        const Annulus a(1.0, 1.0 + gap);
        const double scaled = gap * gap * bound_set(a).lower_radial;
        CHECK(scaled <= 10.0);
        CHECK(scaled < 4.0);
        CHECK(scaled > prev_gap_sq_bound); // increasing toward the limit
        prev_gap_sq_bound = scaled;
    }
    CHECK(std::abs(prev_gap_sq_bound - 4.0) < 1e-3);
}

TEST_CASE("test-field quotient closed forms on the reference annulus") {
    {
        const VEpsilonQuotient q = v_epsilon_rayleigh(ref, 1.0);
        CHECK(q.closed_quotient == doctest::Approx(13.0).epsilon(1e-14));
        CHECK(q.numeric_quotient == doctest::Approx(13.0).epsilon(1e-5));
    }
    {
        // The axial contribution is 3 eps^2: the z derivative is the
        // constant eps^2 over the support, against a profile mass 1/(3 eps).
        const VEpsilonQuotient q = v_epsilon_rayleigh(ref, 0.1);
        CHECK(q.closed_quotient == doctest::Approx(10.03).epsilon(1e-9));
        CHECK(q.numeric_quotient ==
              doctest::Approx(q.closed_quotient).epsilon(1e-5));
    }
    CHECK_THROWS_AS(v_epsilon_rayleigh(ref, 0.0), std::invalid_argument);
}

TEST_CASE("test-field norms match their closed forms") {
    const VEpsilonQuotient q = v_epsilon_rayleigh(ref, 0.5);
    CHECK(q.numeric_l2_sq == doctest::Approx(q.closed_l2_sq).epsilon(1e-6));
    CHECK(q.numeric_grad_sq == doctest::Approx(q.closed_grad_sq).epsilon(1e-6));
}

TEST_CASE("test-field quadrature converges at second order") {
    double prev_err = -1.0;
    for (int n : {64, 128, 256}) {
        const VEpsilonQuotient q = v_epsilon_rayleigh(ref, 1.0, n, n);
        const double err = std::abs(q.numeric_quotient - q.closed_quotient);
        if (prev_err > 0.0) {
            const double ratio = prev_err / err;
            CHECK(ratio > 3.3);
            CHECK(ratio < 4.8);
        }
        prev_err = err;
    }
}

TEST_CASE("quotient dominates the lower bounds for assorted shapes") {
    for (const auto& [r1, r2] : {std::pair{1.0, 2.0}, {0.5, 0.6}, {1.0, 10.0}}) {
        const Annulus a(r1, r2);
        const BoundSet b = bound_set(a);
        for (double eps : {0.1, 1.0, 3.0}) {
            const VEpsilonQuotient q = v_epsilon_rayleigh(a, eps, 256, 256);
            CHECK(q.numeric_quotient >= b.lower_best * (1.0 - 1e-6));
        }
    }
}

TEST_CASE("generic quadrature reproduces the dedicated test-field quotient") {
    // The e_x-directed scalar test field in cylindrical components.
    const double eps = 1.0;
    const VectorField field = [&](const CylPoint& p) -> CylVector {
        const double axial = std::max(0.0, 1.0 - eps * std::abs(p.z));
        const double radial = (ref.r_outer() - p.rho) * (p.rho - ref.r_inner());
        const double v = axial * radial;
        return {v * std::cos(p.theta), -v * std::sin(p.theta), 0.0};
    };
    const double generic = discrete_rayleigh(field, ref, 1.0 / eps,
                                             RayleighGrid{256, 256, 256},
                                             QuotientForm::gradient);
    const VEpsilonQuotient dedicated = v_epsilon_rayleigh(ref, eps);
    CHECK(generic ==
          doctest::Approx(dedicated.closed_quotient).epsilon(1e-3));
}

TEST_CASE("admissible solenoidal field respects the gradient lower bound") {
    const SolenoidalTestField field{ref, 2.0};
    const double q = discrete_rayleigh(field, ref, 2.0, RayleighGrid{96, 16, 96},
                                       QuotientForm::gradient);
    const BoundSet b = bound_set(ref);
    CHECK(q >= b.lower_best * (1.0 - 5e-3));
}

TEST_CASE("curl quotient dominates the gradient quotient for admissible fields") {
    // Field vanishing on the inner wall and the caps but only tangent to the
    // outer wall: the setting of the outer-wall curl bound. Built as the
    // curl of phi(rho) g(z) e_theta with phi = (rho-R1)^2 (R2-rho).
    const double z_extent = 2.0;
    const VectorField field = [&](const CylPoint& p) -> CylVector {
        const double r1 = ref.r_inner(), r2 = ref.r_outer();
        if (std::abs(p.z) >= z_extent) return {};
        const double d1 = p.rho - r1;
        const double phi = d1 * d1 * (r2 - p.rho);
        const double dphi = 2.0 * d1 * (r2 - p.rho) - d1 * d1;
        const double arg = pi * p.z / (2.0 * z_extent);
        const double g = std::cos(arg) * std::cos(arg);
        const double dg = -pi / (2.0 * z_extent) * std::sin(2.0 * arg);
        return {-phi * dg, 0.0, dphi * g + phi * g / p.rho};
    };
    const double grad = discrete_rayleigh(field, ref, z_extent,
                                          RayleighGrid{96, 16, 96},
                                          QuotientForm::gradient);
    const double curl = discrete_rayleigh(field, ref, z_extent,
                                          RayleighGrid{96, 16, 96},
                                          QuotientForm::curl);
    CHECK(curl >= grad * (1.0 - 5e-3));
}

TEST_CASE("support check rejects fields reaching the caps") {
    const VectorField bad = [](const CylPoint&) { return CylVector{0.0, 1.0, 0.0}; };
    CHECK_THROWS_AS(discrete_rayleigh(bad, ref, 1.0, RayleighGrid{16, 8, 16},
                                      QuotientForm::gradient),
                    std::invalid_argument);
    // The same field is fine when declared z-periodic.
    CHECK_NOTHROW(discrete_rayleigh(bad, ref, 1.0, RayleighGrid{16, 8, 16},
                                    QuotientForm::gradient, true));
}

TEST_CASE("phi coefficients: reference values and asymptotic rows") {
    {
        const Annulus near(1.0, 1.0 + 1e-4);
        const auto rows = phi_asymptotics(std::vector<Annulus>{near});
        CHECK(rows[0].scaled_phi1 == doctest::Approx(0.25).epsilon(4e-3));
        CHECK(rows[0].phi2 < 1e-7);
    }
    {
        const Annulus wide(1.0, 1e6);
        CHECK(phi_rotational(wide) == doctest::Approx(1.0).epsilon(1e-5));
    }
    {
        // Shrinking the inner radius blows up both coefficients.
        double prev1 = 0.0, prev2 = 0.0;
        for (double r1 : {1e-1, 1e-2, 1e-3, 1e-4}) {
            const Annulus a(r1, 1.0);
            const double p1 = phi_rotational(a);
            const double p2 = phi_axial(a);
            CHECK(p1 > prev1);
            CHECK(p2 > prev2);
            prev1 = p1;
            prev2 = p2;
        }
    }
}
