#pragma once

#include <complex>

namespace memwave {

using cplx = std::complex<double>;

/// e^z - 1 without cancellation for small |z|.
cplx expm1(cplx z);

/// (e^{z t} - 1) / z, i.e. the integral of e^{z s} over [0, t]. Switches to a
/// Taylor expansion below |z| < 1e-10 so the value is continuous in z.
cplx exp_integral(cplx z, double t);

}  // namespace memwave
