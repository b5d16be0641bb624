#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "memwave/error.hpp"
#include "memwave/simulate.hpp"
#include "memwave/spectrum.hpp"
#include "memwave/synthesis.hpp"
#include "support.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace memwave;
using memwave::testing::k1;
using memwave::testing::k2;

namespace {

InitialData seeded(const ModeBasis& basis) { return generate_initial_data(basis, 1.0, 1.0, 42); }

}  // namespace

TEST_CASE("zero data gives the zero plan") {
    const auto basis = interval_basis(6);
    const InitialData zero{std::vector<double>(6, 0.0), std::vector<double>(6, 0.0)};
    const auto plan = synthesize(k2(), basis, zero, 5.0, Scheme::Strict);
    CHECK(plan.global_bound == 0.0);
    REQUIRE(plan.modal.size() == 6);
    for (double t : {0.0, 1.7, 5.0}) {
        for (double x : {0.3, 1.0, 2.9}) CHECK(eval_control_field(plan, basis, t, x) == 0.0);
    }
}

TEST_CASE("single mode plan steers the mode to rest") {
    const auto basis = interval_basis(1);
    const InitialData data{{1.0}, {0.0}};
    const auto plan = synthesize(k1(), basis, data, 6.0, Scheme::Strict);
    const auto trace = simulate_mode(k1(), 1.0, 1.0, 0.0, &plan.modal[0], 6.0, 1e-4);
    CHECK(std::abs(trace.states.back().theta) < 1e-6);
    CHECK(std::abs(trace.states.back().dtheta) < 1e-6);

    // field = u_1(t) sqrt(2/pi) sin(x)
    for (double t : {0.0, 2.5, 6.0}) {
        const double u1 = plan.modal[0](t);
        CHECK(eval_control_field(plan, basis, t, std::numbers::pi / 2) ==
              doctest::Approx(u1 * 0.7978845608028654).epsilon(1e-14));
    }
}

TEST_CASE("global bound and field") {
    const auto basis = interval_basis(8);
    const auto data = seeded(basis);
    const auto plan = synthesize(k1(), basis, data, 6.0, Scheme::Strict);

    double sum = 0.0;
    for (std::size_t i = 0; i < plan.modal.size(); ++i) sum += plan.modal[i].sup_bound * basis.psi_sup[i];
    CHECK(plan.global_bound == doctest::Approx(sum).epsilon(1e-15));
    CHECK(recompute_global_bound(plan, basis) == plan.global_bound);

    for (double t : {0.0, 3.0, 6.0}) {
        CHECK(std::abs(eval_control_field(plan, basis, t, 0.0)) < 1e-15 * plan.global_bound);
        CHECK(std::abs(eval_control_field(plan, basis, t, std::numbers::pi)) < 1e-12 * plan.global_bound);
    }

    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> ts(0.0, 6.0), xs(0.0, std::numbers::pi);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) worst = std::max(worst, std::abs(eval_control_field(plan, basis, ts(gen), xs(gen))));
    CHECK(worst <= plan.global_bound + 1e-9);
    CHECK(worst > 0.0);
}

TEST_CASE("bound decreases as the horizon doubles") {
    const auto basis = interval_basis(8);
    const auto data = seeded(basis);
    for (Scheme scheme : {Scheme::Strict, Scheme::Paper}) {
        double previous = INFINITY;
        for (double T : {1.5, 3.0, 6.0, 12.0}) {
            const double bound = synthesize(k2(), basis, data, T, scheme).global_bound;
            CHECK(bound < previous);
            previous = bound;
        }
    }
}

TEST_CASE("strict bound cannot beat the mean value of the control") {
    // int u_n = -phi1_n forces sup |u_n| >= |phi1_n| / T
    const auto basis = interval_basis(5);
    const auto data = seeded(basis);
    for (double T : {2.0, 8.0, 32.0}) {
        const auto plan = synthesize(k2(), basis, data, T, Scheme::Strict);
        for (std::size_t i = 0; i < plan.modal.size(); ++i) {
            CHECK(plan.modal[i].sup_bound >= std::abs(data.phi1[i]) / T * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("tail majorant accounting") {
    const auto basis = interval_basis(12);
    SynthesisOptions opts;
    opts.beta = 1.5;
    const auto plan = synthesize(k1(), basis, generate_initial_data(basis, 1.5, 1.0, 7), 4.0, Scheme::Strict, opts);
    REQUIRE(plan.tail_majorant.has_value());
    CHECK(*plan.tail_majorant == interval_tail_majorant(12, 1.5));
    const auto without = synthesize(k1(), basis, seeded(basis), 4.0, Scheme::Strict);
    CHECK_FALSE(without.tail_majorant.has_value());
}

TEST_CASE("input validation") {
    const auto basis = interval_basis(3);
    const auto data = seeded(basis);
    CHECK_THROWS_AS(synthesize(k1(), basis, data, 0.0, Scheme::Strict), ConfigError);
    CHECK_THROWS_AS(synthesize(k1(), basis, data, -2.0, Scheme::Strict), ConfigError);
    const InitialData short_data{{1.0}, {0.0}};
    CHECK_THROWS_AS(synthesize(k1(), basis, short_data, 2.0, Scheme::Strict), ConfigError);

    const auto user = modal_basis({1.0, 2.0}, {1.0, 1.0}, 2);
    const InitialData two{{0.1, 0.1}, {0.0, 0.0}};
    const auto plan = synthesize(k1(), user, two, 3.0, Scheme::Strict);
    CHECK(plan.global_bound > 0.0);
    CHECK_THROWS_AS(eval_control_field(plan, user, 1.0, 0.5), UnsupportedBasis);
}

TEST_CASE("fingerprints separate inputs") {
    CHECK(fingerprint(k1()) == fingerprint(ExponentialKernel({1.0}, {1.0})));
    CHECK(fingerprint(k1()) != fingerprint(k2()));
    CHECK(fingerprint(interval_basis(4)) != fingerprint(interval_basis(5)));
    const auto basis = interval_basis(4);
    CHECK(fingerprint(seeded(basis)) != fingerprint(generate_initial_data(basis, 1.0, 1.0, 43)));
}

TEST_CASE("horizon search") {
    const auto basis = interval_basis(8);

    const InitialData zero{std::vector<double>(8, 0.0), std::vector<double>(8, 0.0)};
    const auto trivial = find_time_for_bound(k1(), basis, zero, 0.5, Scheme::Strict);
    CHECK(trivial.T == 1.0);
    CHECK(trivial.plan.global_bound == 0.0);

    const auto data = seeded(basis);
    const auto generous = find_time_for_bound(k1(), basis, data, 1e9, Scheme::Strict);
    CHECK(generous.T == 1.0);
    CHECK(generous.transcript.size() == 1);

    const auto search = find_time_for_bound(k1(), basis, data, 0.5, Scheme::Strict);
    CHECK(search.plan.global_bound <= 0.5);
    CHECK(search.plan.T == search.T);
    CHECK(synthesize(k1(), basis, data, search.T * 0.98, Scheme::Strict).global_bound > 0.5);
    CHECK(synthesize(k1(), basis, data, search.T / 2, Scheme::Strict).global_bound > 0.5);
    CHECK(search.transcript.size() >= 2);
    for (const auto& m : search.plan.modal) CHECK(m.moment_residual < 1e-8);

    CHECK_THROWS_AS(find_time_for_bound(k1(), basis, data, 1e-30, Scheme::Strict), HorizonOverflow);
    CHECK_THROWS_AS(find_time_for_bound(k1(), basis, data, 0.0, Scheme::Strict), ConfigError);
}
