#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace couette::num {

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
/// Returns the abscissa once the bracket width drops below x_tol.
inline double golden_section_max(const std::function<double(double)>& f,
                                 double lo, double hi, double x_tol,
                                 int max_iter = 400) {
    constexpr double inv_phi = 0.6180339887498949; // (sqrt(5)-1)/2
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter; ++it) {
        if (b - a <= x_tol) return 0.5 * (a + b);
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    throw std::runtime_error("golden_section_max: bracket did not reach tolerance");
}

/// Pairwise (cascade) summation; deterministic and insensitive to the order
/// noise plain accumulation picks up on long ranges.
inline double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

/// Element of the van der Corput sequence in the given base; index >= 1.
inline double halton(std::uint64_t index, std::uint32_t base) {
    double result = 0.0;
    double f = 1.0;
    while (index > 0) {
        f /= static_cast<double>(base);
        result += f * static_cast<double>(index % base);
        index /= base;
    }
    return result;
}

} // namespace couette::num
