#include "memwave/numeric.hpp"

#include <cmath>

namespace memwave {

cplx expm1(cplx z) {
    const double x = z.real();
    const double y = z.imag();
    if (y == 0.0) return {std::expm1(x), 0.0};
    const double half_sin = std::sin(0.5 * y);
    const double re = std::expm1(x) * std::cos(y) - 2.0 * half_sin * half_sin;
    const double im = std::exp(x) * std::sin(y);
    return {re, im};
}

cplx exp_integral(cplx z, double t) {
    if (std::abs(z) < 1e-10) {
        return t + z * t * t / 2.0 + z * z * t * t * t / 6.0;
    }
    return expm1(z * t) / z;
}


}  // namespace memwave
