#include "memwave/verify.hpp"

#include "memwave/error.hpp"
#include "memwave/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace memwave {

namespace {

constexpr double kTerminalTol = 1e-6;
constexpr double kRestTol = 1e-5;
constexpr double kMomentTol = 1e-8;
constexpr double kImagTol = 1e-12;
constexpr double kDriftTol = 1e-9;
constexpr double kBoundSlack = 1e-9;

double max_imag_ratio(const ModalControl& mc) {
    constexpr int kSamples = 4096;
    double max_im = 0.0;
    double max_re = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const cplx v = mc.complex_value(mc.T * i / (kSamples - 1));
        max_im = std::max(max_im, std::abs(v.imag()));
        max_re = std::max(max_re, std::abs(v.real()));
    }
    return max_im / std::max(1.0, max_re);
}

}  // namespace

double predicted_defect(const CharacteristicRoots& roots, double phi1, const ModalControl& mc) {
    return ((phi1 + modal_integral(mc)) / roots.lprime[0]).real();
}

std::vector<CriterionResult> evaluate_criteria(const VerificationReport& report) {
    const bool strict = report.scheme == Scheme::Strict;
    std::vector<CriterionResult> out;
    auto add = [&](const std::string& name, auto ratio_of) {
        CriterionResult c{name, 0.0, true};
        for (const auto& m : report.modes) c.worst_ratio = std::max(c.worst_ratio, ratio_of(m));
        c.pass = c.worst_ratio < 1.0;
        out.push_back(c);
    };
    if (strict) {
        add("terminal_theta", [](const ModeVerification& m) {
            return std::abs(m.terminal_theta) / (kTerminalTol * m.scale);
        });
    } else {
        add("defect_law", [](const ModeVerification& m) {
            return std::abs(m.observed_defect - m.predicted_defect) /
                   (kTerminalTol * std::max(1.0, std::abs(m.predicted_defect)));
        });
    }
    add("terminal_dtheta", [](const ModeVerification& m) {
        return std::abs(m.terminal_dtheta) / (kTerminalTol * m.scale);
    });
    if (strict) {
        add("memory_cleared", [](const ModeVerification& m) {
            double worst = 0.0;
            for (double w : m.terminal_memory) worst = std::max(worst, std::abs(w));
            return worst / (kTerminalTol * m.scale);
        });
        add("rest_after_horizon", [](const ModeVerification& m) {
            return m.rest_residual / (kRestTol * m.scale);
        });
    }
    add("moment_residual", [](const ModeVerification& m) { return m.moment_residual / kMomentTol; });
    add("control_realness", [](const ModeVerification& m) { return m.imag_ratio / kImagTol; });
    add("invariant_drift", [](const ModeVerification& m) {
        return m.drift / (kDriftTol * std::max(1.0, m.scale));
    });
    if (report.field_sampled) {
        // value/tolerance form: ratio < 1 iff sampled max <= global bound + slack
        CriterionResult c{"bound_certified", 0.0, true};
        c.worst_ratio = report.sampled_field_max / (report.global_bound + kBoundSlack);
        c.pass = report.sampled_field_max <= report.global_bound + kBoundSlack;
        out.push_back(c);
    }
    return out;
}

VerificationReport verify_plan(const ExponentialKernel& k, const ModeBasis& basis, const InitialData& init,
                               const ControlPlan& plan, const VerifyOptions& options) {
    if (plan.kernel_fingerprint != fingerprint(k)) throw ParameterMismatch("plan kernel fingerprint mismatch");
    if (plan.basis_fingerprint != fingerprint(basis)) throw ParameterMismatch("plan basis fingerprint mismatch");
    if (!plan.data_fingerprint.empty() && plan.data_fingerprint != fingerprint(init)) {
        throw ParameterMismatch("plan initial-data fingerprint mismatch");
    }
    if (plan.modal.size() != basis.size()) throw ParameterMismatch("plan mode count differs from basis");

    VerificationReport report;
    report.T = plan.T;
    report.scheme = plan.scheme;
    report.global_bound = plan.global_bound;
    report.modes.resize(basis.size());

    const double dt = options.dt > 0.0 ? options.dt : plan.T / 20000.0;
    const auto roots = find_all_roots(k, basis);

    parallel_for(basis.size(), [&](std::size_t i) {
        const auto& mc = plan.modal[i];
        const auto& r = roots[i];
        const double phi0 = init.phi0[i];
        const double phi1 = init.phi1[i];
        ModeVerification m;
        m.n = mc.n;
        m.scale = std::abs(phi0) + std::abs(phi1) + 1e-12;

        const double window = options.post_horizon_factor / r.slowest_decay();
        double rest = 0.0;
        double drift = 0.0;
        ModalState at_horizon;
        SimOptions sim;
        sim.record_every = 1 << 30;
        sim.observer = [&](double t, const ModalState& s) {
            if (t > plan.T) rest = std::max(rest, std::abs(s.theta));
            drift = std::max(drift, std::abs(memory_invariant(k, r.alpha, s) - phi1 - mc.integral_to(t)));
        };
        const auto trace = simulate_mode(k, r.alpha, phi0, phi1, &mc, plan.T + window, dt, sim, mc.n);
        for (std::size_t s = 0; s < trace.times.size(); ++s) {
            if (trace.times[s] == plan.T) at_horizon = trace.states[s];
        }
        m.terminal_theta = at_horizon.theta;
        m.terminal_dtheta = at_horizon.dtheta;
        m.terminal_memory = at_horizon.w;
        m.rest_residual = rest;
        m.observed_defect = at_horizon.theta;
        m.predicted_defect = predicted_defect(r, phi1, mc);
        m.drift = drift;

        const auto sys = build_moment_system(r, phi0, phi1, plan.T, plan.scheme);
        m.moment_residual = moment_residual(sys, mc);
        m.sup_u = mc.sup_bound;
        m.imag_ratio = max_imag_ratio(mc);
        report.modes[i] = std::move(m);
    });

    if (basis.kind == BasisKind::Interval && options.field_grid > 1) {
        const int grid = options.field_grid;
        const double norm = std::sqrt(2.0 / std::numbers::pi);
        std::vector<double> u(basis.size());
        double field_max = 0.0;
        for (int it = 0; it < grid; ++it) {
            const double t = plan.T * it / (grid - 1);
            for (std::size_t i = 0; i < basis.size(); ++i) u[i] = plan.modal[i](t);
            for (int ix = 0; ix < grid; ++ix) {
                const double x = std::numbers::pi * ix / (grid - 1);
                double sum = 0.0;
                for (std::size_t i = 0; i < basis.size(); ++i) sum += u[i] * norm * std::sin(basis.alphas[i] * x);
                field_max = std::max(field_max, std::abs(sum));
            }
        }
        report.sampled_field_max = field_max;
        report.field_sampled = true;
    }

    report.criteria = evaluate_criteria(report);
    report.all_pass = std::all_of(report.criteria.begin(), report.criteria.end(),
                                  [](const CriterionResult& c) { return c.pass; });
    return report;
}

}  // namespace memwave
