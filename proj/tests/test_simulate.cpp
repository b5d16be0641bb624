#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "memwave/error.hpp"
#include "memwave/simulate.hpp"
#include "support.hpp"

#include <cmath>
#include <limits>

using namespace memwave;
using memwave::testing::all_kernels;
using memwave::testing::k1;
using memwave::testing::k2;

namespace {

double theta_at(const SimulationTrace& trace) { return trace.states.back().theta; }

ModalControl strict_control(const ExponentialKernel& k, double alpha, double phi0, double phi1, double T) {
    const auto r = find_roots(k, alpha);
    return solve_modal_moments(build_moment_system(r, phi0, phi1, T, Scheme::Strict));
}

}  // namespace

TEST_CASE("free response settles at the memory-dictated rest value") {
    const auto k = k1();
    const auto moving = simulate_mode(k, 1.0, 0.0, 1.0, nullptr, 40.0, 1e-3);
    CHECK(std::abs(theta_at(moving) - 1.0) < 1e-5);
    const auto displaced = simulate_mode(k, 1.0, 1.0, 0.0, nullptr, 40.0, 1e-3);
    CHECK(std::abs(theta_at(displaced)) < 1e-5);

    // general kernel: phi1 / (alpha^2 Khat(0))
    const auto k3 = memwave::testing::k3();
    const double rest = 0.7 / (4.0 * k3.khat(0.0).real());
    const auto t3 = simulate_mode(k3, 2.0, -0.3, 0.7, nullptr, 60.0, 1e-3);
    CHECK(std::abs(theta_at(t3) - rest) < 1e-5 * std::abs(rest));
}

TEST_CASE("zero data stays at zero") {
    const auto trace = simulate_mode(k2(), 3.0, 0.0, 0.0, nullptr, 5.0, 1e-2);
    for (const auto& s : trace.states) {
        CHECK(s.theta == 0.0);
        CHECK(s.dtheta == 0.0);
        for (double w : s.w) CHECK(w == 0.0);
    }
}

TEST_CASE("residue series agree with the time stepper") {
    for (const auto& k : all_kernels()) {
        for (int n : {1, 5, 20}) {
            const double alpha = n;
            const auto r = find_roots(k, alpha, n);
            const double phi0 = 1.0 / (alpha * alpha);
            const double phi1 = 0.5 / alpha;
            for (double t : {0.1, 1.0, 5.0}) {
                const double sim = theta_at(simulate_mode(k, alpha, phi0, phi1, nullptr, t, 1e-4));
                const double series = free_response_series(r, phi0, phi1, t);
                CHECK(std::abs(sim - series) < 1e-6 * std::abs(series));
            }
        }
    }
}

TEST_CASE("forced series agrees with the time stepper") {
    for (const auto& k : all_kernels()) {
        for (int n : {1, 5, 20}) {
            const double alpha = n;
            const auto r = find_roots(k, alpha, n);
            const auto mc = solve_modal_moments(build_moment_system(r, 1.0 / alpha, 0.4, 6.0, Scheme::Strict));
            for (double t : {0.1, 1.0, 5.0}) {
                const double sim = theta_at(simulate_mode(k, alpha, 0.0, 0.0, &mc, t, 1e-4));
                const double series = forced_response_series(r, mc, t);
                CHECK(std::abs(sim - series) < 1e-6 * std::abs(series));
            }
        }
    }
}

TEST_CASE("free series initial conditions") {
    const auto r = find_roots(k2(), 2.0, 2);
    CHECK(std::abs(free_response_series(r, 0.8, -0.3, 0.0) - 0.8) < 1e-12);
    const double h = 1e-5;
    const double slope = (free_response_series(r, 0.8, -0.3, h) - free_response_series(r, 0.8, -0.3, -h)) / (2 * h);
    CHECK(std::abs(slope + 0.3) < 1e-8);
}

TEST_CASE("strict control cancels the free response at the horizon") {
    for (const auto& k : all_kernels()) {
        const auto r = find_roots(k, 3.0, 3);
        const auto mc = solve_modal_moments(build_moment_system(r, 0.2, -0.5, 6.0, Scheme::Strict));
        CHECK(forced_response_series(r, mc, 0.0) == 0.0);
        const double total = free_response_series(r, 0.2, -0.5, 6.0) + forced_response_series(r, mc, 6.0);
        CHECK(std::abs(total) < 1e-8 * 0.7);
        // past the horizon nothing moves
        const double later = free_response_series(r, 0.2, -0.5, 9.0) + forced_response_series(r, mc, 9.0);
        CHECK(std::abs(later) < 1e-8 * 0.7);
    }
}

TEST_CASE("memory invariant drift") {
    const auto k = k2();
    const auto mc = strict_control(k, 2.0, 0.3, 0.6, 4.0);
    const auto trace = simulate_mode(k, 2.0, 0.3, 0.6, &mc, 6.0, 1e-3);
    CHECK(invariant_drift(trace, k, 2.0, &mc) < 1e-9);
    for (double d : trace.drift) CHECK(d < 1e-9);
    CHECK_THROWS_AS(invariant_drift(trace, k, 2.5, &mc), ParameterMismatch);
    CHECK_THROWS_AS(invariant_drift(trace, k1(), 2.0, &mc), ParameterMismatch);

    // strict control empties every state variable at the horizon
    const auto at_T = simulate_mode(k, 2.0, 0.3, 0.6, &mc, 4.0, 1e-4);
    CHECK(std::abs(at_T.states.back().theta) < 1e-6 * 0.9);
    CHECK(std::abs(at_T.states.back().dtheta) < 1e-6 * 0.9);
    for (double w : at_T.states.back().w) CHECK(std::abs(w) < 1e-6 * 0.9);
    CHECK(std::abs(memory_invariant(k, 2.0, at_T.states.back())) < 1e-8);
}

TEST_CASE("fourth-order convergence") {
    const auto k = memwave::testing::k3();
    const auto r = find_roots(k, 2.0, 2);
    const double exact = free_response_series(r, 0.5, 0.5, 2.0);
    const double coarse = std::abs(theta_at(simulate_mode(k, 2.0, 0.5, 0.5, nullptr, 2.0, 0.04)) - exact);
    const double fine = std::abs(theta_at(simulate_mode(k, 2.0, 0.5, 0.5, nullptr, 2.0, 0.02)) - exact);
    const double ratio = coarse / fine;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("trace layout") {
    const auto k = k1();
    const auto mc = strict_control(k, 1.0, 0.0, 1.0, 1.05);
    SimOptions opts;
    opts.record_every = 7;
    const auto trace = simulate_mode(k, 1.0, 0.0, 1.0, &mc, 2.0, 0.1, opts);
    CHECK(trace.times.front() == 0.0);
    CHECK(trace.times.back() == doctest::Approx(2.0).epsilon(1e-15));
    bool has_horizon = false;
    for (double t : trace.times) has_horizon |= std::abs(t - 1.05) < 1e-14;
    CHECK(has_horizon);
    for (std::size_t i = 1; i < trace.times.size(); ++i) CHECK(trace.times[i] > trace.times[i - 1]);
    CHECK(trace.controls.back() == 0.0);
}

TEST_CASE("invalid step sizes") {
    const auto k = k1();
    CHECK_THROWS_AS(simulate_mode(k, 1.0, 1.0, 0.0, nullptr, 1.0, 0.0), StepSizeInvalid);
    CHECK_THROWS_AS(simulate_mode(k, 1.0, 1.0, 0.0, nullptr, 1.0, -0.1), StepSizeInvalid);
    CHECK_THROWS_AS(simulate_mode(k, 1.0, 1.0, 0.0, nullptr, 1.0, std::numeric_limits<double>::quiet_NaN()),
                    StepSizeInvalid);
    CHECK_THROWS_AS(simulate_mode(k, 1.0, 1.0, 0.0, nullptr, -1.0, 0.1), StepSizeInvalid);
}
