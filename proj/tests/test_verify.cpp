#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "memwave/error.hpp"
#include "memwave/spectrum.hpp"
#include "memwave/verify.hpp"
#include "support.hpp"

#include <cmath>

using namespace memwave;
using memwave::testing::k1;
using memwave::testing::k2;

namespace {

const CriterionResult* find(const VerificationReport& r, const std::string& name) {
    for (const auto& c : r.criteria) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("predicted defect") {
    const auto r = find_roots(k1(), 1.0, 1);
    ModalControl idle;
    idle.n = 1;
    idle.T = 3.0;
    idle.exponents = {cplx(1.0, 0.0)};
    idle.scaled_coeffs = {cplx(0.0, 0.0)};
    // (phi1 + 0) / (alpha^2 Khat(0)) = 1 for the single-exponential kernel
    CHECK(predicted_defect(r, 1.0, idle) == doctest::Approx(1.0).epsilon(1e-14));

    const auto strict = solve_modal_moments(build_moment_system(r, 0.4, 0.9, 6.0, Scheme::Strict));
    CHECK(std::abs(predicted_defect(r, 0.9, strict)) < 1e-8);
}

TEST_CASE("zero data passes trivially") {
    const auto basis = interval_basis(4);
    const InitialData zero{std::vector<double>(4, 0.0), std::vector<double>(4, 0.0)};
    const auto plan = synthesize(k2(), basis, zero, 3.0, Scheme::Strict);
    const auto report = verify_plan(k2(), basis, zero, plan);
    CHECK(report.all_pass);
    for (const auto& m : report.modes) {
        CHECK(m.terminal_theta == 0.0);
        CHECK(m.terminal_dtheta == 0.0);
        CHECK(m.rest_residual == 0.0);
        CHECK(m.moment_residual == 0.0);
        CHECK(m.sup_u == 0.0);
    }
    CHECK(report.sampled_field_max == 0.0);
}

TEST_CASE("strict plan end to end") {
    const auto basis = interval_basis(8);
    const auto data = generate_initial_data(basis, 1.0, 1.0, 42);
    const auto plan = synthesize(k1(), basis, data, 6.0, Scheme::Strict);
    const auto report = verify_plan(k1(), basis, data, plan);
    CHECK(report.all_pass);
    for (const char* name : {"terminal_theta", "terminal_dtheta", "memory_cleared", "rest_after_horizon",
                             "moment_residual", "control_realness", "invariant_drift", "bound_certified"}) {
        const auto* c = find(report, name);
        REQUIRE_MESSAGE(c != nullptr, name);
        CHECK_MESSAGE(c->pass, name);
    }
    CHECK(find(report, "defect_law") == nullptr);
    CHECK(report.field_sampled);
    CHECK(report.sampled_field_max <= report.global_bound + 1e-9);
    for (const auto& m : report.modes) {
        CHECK(std::abs(m.terminal_theta) < 1e-6 * m.scale);
        CHECK(std::abs(m.observed_defect - m.terminal_theta) == 0.0);
        CHECK(m.terminal_memory.size() == 1);
    }

    const auto recomputed = evaluate_criteria(report);
    REQUIRE(recomputed.size() == report.criteria.size());
    for (std::size_t i = 0; i < recomputed.size(); ++i) {
        CHECK(recomputed[i].name == report.criteria[i].name);
        CHECK(recomputed[i].pass == report.criteria[i].pass);
        CHECK(recomputed[i].worst_ratio == report.criteria[i].worst_ratio);
    }
}

TEST_CASE("paper scheme leaves the predicted defect") {
    const auto basis = interval_basis(8);
    const auto data = generate_initial_data(basis, 1.0, 1.0, 42);
    const auto plan = synthesize(k2(), basis, data, 6.0, Scheme::Paper);
    const auto report = verify_plan(k2(), basis, data, plan);
    CHECK(report.all_pass);
    const auto* law = find(report, "defect_law");
    REQUIRE(law != nullptr);
    CHECK(law->pass);
    CHECK(find(report, "terminal_theta") == nullptr);
    double largest = 0.0;
    for (const auto& m : report.modes) {
        largest = std::max(largest, std::abs(m.predicted_defect));
        CHECK(std::abs(m.observed_defect - m.predicted_defect) < 1e-6 * std::max(1.0, std::abs(m.predicted_defect)));
        CHECK(std::abs(m.terminal_dtheta) < 1e-6 * m.scale);
    }
    // the defect is real, not rounding
    CHECK(largest > 1e-4);
}

TEST_CASE("tampered control fails") {
    const auto basis = interval_basis(4);
    const auto data = generate_initial_data(basis, 1.0, 1.0, 42);
    auto plan = synthesize(k1(), basis, data, 5.0, Scheme::Strict);
    plan.modal[2].scaled_coeffs[0] *= 1.001;
    plan.modal[2].scaled_coeffs[1] *= 1.001;
    const auto report = verify_plan(k1(), basis, data, plan);
    CHECK_FALSE(report.all_pass);
    CHECK_FALSE(find(report, "moment_residual")->pass);
    CHECK_FALSE(find(report, "terminal_theta")->pass);
}

TEST_CASE("mismatched setup is rejected") {
    const auto basis = interval_basis(4);
    const auto data = generate_initial_data(basis, 1.0, 1.0, 42);
    const auto plan = synthesize(k1(), basis, data, 5.0, Scheme::Strict);
    CHECK_THROWS_AS(verify_plan(k2(), basis, data, plan), ParameterMismatch);
    CHECK_THROWS_AS(verify_plan(k1(), interval_basis(5), generate_initial_data(interval_basis(5), 1.0, 1.0, 42), plan),
                    ParameterMismatch);
    CHECK_THROWS_AS(verify_plan(k1(), basis, generate_initial_data(basis, 1.0, 1.0, 1), plan), ParameterMismatch);
}
