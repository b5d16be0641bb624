#pragma once

#include "memwave/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace memwave::testing {

inline ExponentialKernel k1() { return ExponentialKernel({1.0}, {1.0}); }
inline ExponentialKernel k2() { return ExponentialKernel({1.0, 2.0}, {1.0, 3.0}); }
inline ExponentialKernel k3() { return ExponentialKernel({0.5, 1.0, 2.0}, {1.0, 2.0, 5.0}); }
inline std::vector<ExponentialKernel> all_kernels() { return {k1(), k2(), k3()}; }

inline double rel_err(std::complex<double> got, std::complex<double> want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

/// Random kernel with well separated rates, for property tests.
inline ExponentialKernel random_kernel(std::mt19937_64& gen, int terms) {
    std::uniform_real_distribution<double> amp(0.2, 3.0);
    std::uniform_real_distribution<double> gap(0.5, 2.0);
    std::vector<double> c, g;
    double rate = 0.0;
    for (int i = 0; i < terms; ++i) {
        rate += gap(gen);
        c.push_back(amp(gen));
        g.push_back(rate);
    }
    return ExponentialKernel(c, g);
}

}  // namespace memwave::testing
