#include "fpm/bessel.hpp"

#include <cmath>
#include <numbers>

namespace fpm {
namespace {

/// Ascending series J1(x) = sum_m (-1)^m / (m! (m+1)!) (x/2)^(2m+1).
/// Cancellation stays below ~1e4 for |x| <= 12, keeping the result well
/// under the 1e-10 contract in double precision.
double j1_series(double x) {
    const double half = 0.5 * x;
    double term = half;  // m = 0
    double sum = term;
    const double q = half * half;
    for (int m = 1; m <= 60; ++m) {
        term *= -q / (static_cast<double>(m) * static_cast<double>(m + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

/// Hankel asymptotic expansion
///   J1(x) ~ sqrt(2/(pi x)) [ P(x) cos(w) - Q(x) sin(w) ],  w = x - 3pi/4,
/// with the P and Q series truncated at their smallest term. The floor of
/// the truncated series is below 1e-11 for x >= 12.
double j1_asymptotic(double x) {
    const double mu = 4.0;  // 4 * nu^2 with nu = 1
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = 1.0;
    for (int k = 1; k <= 40; ++k) {
        const double num = mu - static_cast<double>(2 * k - 1) * static_cast<double>(2 * k - 1);
        term *= num / (static_cast<double>(k) * 8.0 * x);
        if (std::abs(term) >= prev) break;  // series started diverging
        if (k % 2 == 1)
            q += (k % 4 == 1) ? term : -term;
        else
            p += (k % 4 == 2) ? -term : term;
        prev = std::abs(term);
        if (prev < 1e-17) break;
    }
    const double w = x - 0.75 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(w) - q * std::sin(w));
}

}  // namespace

double bessel_j1(double x) {
    const double ax = std::abs(x);
    double v = (ax < 12.0) ? j1_series(ax) : j1_asymptotic(ax);
    return x < 0.0 ? -v : v;  // J1 is odd
}

}  // namespace fpm
