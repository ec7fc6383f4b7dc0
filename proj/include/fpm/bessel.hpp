#pragma once

namespace fpm {

/// First-kind, order-1 Bessel function. Absolute error < 1e-10 on |x| <= 50.
double bessel_j1(double x);

}  // namespace fpm
