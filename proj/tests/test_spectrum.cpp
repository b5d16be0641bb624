#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "memwave/error.hpp"
#include "memwave/spectrum.hpp"

#include <cmath>
#include <numbers>

using namespace memwave;

TEST_CASE("interval basis") {
    const auto b = interval_basis(3);
    CHECK(b.alphas == std::vector<double>{1.0, 2.0, 3.0});
    for (double s : b.psi_sup) CHECK(s == doctest::Approx(0.7978845608).epsilon(1e-10));
    CHECK(b.dimension == 1);
    CHECK(interval_basis(1).size() == 1);

    // -d^2/dx^2 sin(2x) = 4 sin(2x), by central differences
    const double x = 0.37;
    const double h = 1e-4;
    const double second = (std::sin(2 * (x + h)) - 2 * std::sin(2 * x) + std::sin(2 * (x - h))) / (h * h);
    CHECK(-second / std::sin(2 * x) == doctest::Approx(b.alphas[1] * b.alphas[1]).epsilon(1e-6));

    // orthonormality of sqrt(2/pi) sin(n x) by midpoint rule
    const int m = 20000;
    double inner11 = 0.0, inner12 = 0.0;
    for (int i = 0; i < m; ++i) {
        const double s = (i + 0.5) * std::numbers::pi / m;
        inner11 += 2.0 / std::numbers::pi * std::sin(s) * std::sin(s);
        inner12 += 2.0 / std::numbers::pi * std::sin(s) * std::sin(2 * s);
    }
    CHECK(inner11 * std::numbers::pi / m == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(inner12 * std::numbers::pi / m) < 1e-8);
}

TEST_CASE("sobolev norm") {
    const auto small = interval_basis(3);
    CHECK(sobolev_norm_sq(small, {1.0, 0.0, 0.0}, 1.0) == 1.0);
    CHECK(sobolev_norm_sq(small, {1.0, 2.0, 3.0}, 0.0) == 14.0);

    const auto b = interval_basis(100);
    std::vector<double> f;
    for (int n = 1; n <= 100; ++n) f.push_back(1.0 / (n * n));
    // sum_{n<=100} n^{-4} n^{2}
    CHECK(sobolev_norm_sq(b, f, 1.0) == doctest::Approx(1.6349839001848923).epsilon(1e-13));
    CHECK_THROWS_AS(sobolev_norm_sq(small, {1.0, 1.0, 1.0, 1.0}, 1.0), ConfigError);
}

TEST_CASE("tail majorant") {
    // integral of x^{-2 beta} from n_max to infinity
    CHECK(interval_tail_majorant(10, 1.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(interval_tail_majorant(4, 1.5) == doctest::Approx(1.0 / (4.0 * 4.0 * 2.0)).epsilon(1e-15));
    // it bounds a long partial sum of the neglected terms
    double tail = 0.0;
    for (int n = 11; n < 1000000; ++n) tail += 1.0 / (double(n) * n);
    CHECK(tail <= interval_tail_majorant(10, 1.0));
}

TEST_CASE("generated initial data") {
    const auto b = interval_basis(64);
    const auto a = generate_initial_data(b, 1.0, 1.0, 42);
    const auto again = generate_initial_data(b, 1.0, 1.0, 42);
    CHECK(a.phi0 == again.phi0);
    CHECK(a.phi1 == again.phi1);
    CHECK(generate_initial_data(b, 1.0, 1.0, 43).phi0 != a.phi0);

    // a prefix of modes does not depend on how many modes are generated
    const auto shorter = generate_initial_data(interval_basis(8), 1.0, 1.0, 42);
    for (int i = 0; i < 8; ++i) CHECK(shorter.phi0[i] == a.phi0[i]);

    const double beta = 1.0;
    CHECK(sobolev_norm_sq(b, a.phi0, beta + 1.0) <= std::numbers::pi * std::numbers::pi / 6.0);
    CHECK(sobolev_norm_sq(b, a.phi1, beta) <= std::numbers::pi * std::numbers::pi / 6.0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double n = b.alphas[i];
        CHECK(std::abs(a.phi0[i]) <= std::pow(n, -3.0));
        CHECK(std::abs(a.phi1[i]) <= std::pow(n, -2.0));
    }

    CHECK_THROWS_AS(generate_initial_data(b, 0.4, 1.0, 1), SmoothnessViolation);
    CHECK_THROWS_AS(generate_initial_data(b, 0.5, 1.0, 1), SmoothnessViolation);
    CHECK_THROWS_AS(generate_initial_data(b, 1.0, 0.0, 1), ConfigError);
}

TEST_CASE("user-supplied spectra are validated") {
    CHECK_NOTHROW(modal_basis({1.0, 1.5}, {0.5, 0.5}, 2));
    CHECK_THROWS_AS(modal_basis({1.0, 1.0}, {0.5, 0.5}, 2), ConfigError);
    CHECK_THROWS_AS(modal_basis({1.0, 2.0}, {0.5}, 2), ConfigError);
    CHECK_THROWS_AS(modal_basis({1.0}, {0.5}, 0), ConfigError);
}
