#include "memwave/simulate.hpp"

#include "memwave/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace memwave {

namespace {

struct Rhs {
    const ExponentialKernel& k;
    double a2;
    double k0;

    void operator()(const ModalState& s, double u, ModalState& d) const {
        const auto& c = k.amplitudes();
        const auto& g = k.rates();
        double memory = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            memory += c[j] * s.w[j];
            d.w[j] = s.theta - g[j] * s.w[j];
        }
        d.theta = s.dtheta;
        d.dtheta = -a2 * k0 * s.theta + a2 * memory + u;
    }
};

void axpy(ModalState& out, const ModalState& base, double h, const ModalState& d) {
    out.theta = base.theta + h * d.theta;
    out.dtheta = base.dtheta + h * d.dtheta;
    for (std::size_t j = 0; j < base.w.size(); ++j) out.w[j] = base.w[j] + h * d.w[j];
}

}  // namespace

double memory_invariant(const ExponentialKernel& k, double alpha, const ModalState& state) {
    double sum = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) sum += k.amplitudes()[j] / k.rates()[j] * state.w[j];
    return state.dtheta + alpha * alpha * sum;
}

SimulationTrace simulate_mode(const ExponentialKernel& k, double alpha, double phi0, double phi1,
                              const ModalControl* control, double t_end, double dt,
                              const SimOptions& options, int n) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw StepSizeInvalid("dt must be positive and finite");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw StepSizeInvalid("t_end must be positive and finite");

    const std::size_t terms = k.size();
    const Rhs rhs{k, alpha * alpha, k.value(0.0)};
    const double horizon = control ? control->T : std::numeric_limits<double>::infinity();
    const int stride = std::max(1, options.record_every);

    SimulationTrace trace;
    trace.n = n;
    trace.alpha = alpha;
    trace.kernel_terms = terms;
    trace.phi0 = phi0;
    trace.phi1 = phi1;

    ModalState state{phi0, phi1, std::vector<double>(terms, 0.0)};
    ModalState k1 = state, k2 = state, k3 = state, k4 = state, tmp = state;

    auto control_at = [&](double t, bool active) {
        return active ? control->complex_value(std::min(t, horizon)).real() : 0.0;
    };
    auto record = [&](double t, bool active) {
        trace.times.push_back(t);
        trace.states.push_back(state);
        trace.controls.push_back(control_at(t, active && t <= horizon));
        const double accumulated = control ? control->integral_to(t) : 0.0;
        trace.drift.push_back(std::abs(memory_invariant(k, alpha, state) - phi1 - accumulated));
    };

    record(0.0, control != nullptr);
    if (options.observer) options.observer(0.0, state);

    struct Segment {
        double begin;
        double end;
        bool active;
    };
    std::vector<Segment> segments;
    if (control && horizon < t_end) {
        segments.push_back({0.0, horizon, true});
        segments.push_back({horizon, t_end, false});
    } else {
        segments.push_back({0.0, t_end, control != nullptr});
    }

    long step_index = 0;
    for (std::size_t si = 0; si < segments.size(); ++si) {
        const auto& seg = segments[si];
        const long steps = std::max(1L, static_cast<long>(std::ceil((seg.end - seg.begin) / dt - 1e-9)));
        const double h = (seg.end - seg.begin) / static_cast<double>(steps);
        for (long s = 0; s < steps; ++s) {
            const double t = seg.begin + s * h;
            const double t_next = (s + 1 == steps) ? seg.end : seg.begin + (s + 1) * h;
            const double u0 = control_at(t, seg.active);
            const double um = control_at(t + 0.5 * h, seg.active);
            const double u1 = control_at(t_next, seg.active);
            rhs(state, u0, k1);
            axpy(tmp, state, 0.5 * h, k1);
            rhs(tmp, um, k2);
            axpy(tmp, state, 0.5 * h, k2);
            rhs(tmp, um, k3);
            axpy(tmp, state, h, k3);
            rhs(tmp, u1, k4);
            state.theta += h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
            state.dtheta += h / 6.0 * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta);
            for (std::size_t j = 0; j < terms; ++j) {
                state.w[j] += h / 6.0 * (k1.w[j] + 2.0 * k2.w[j] + 2.0 * k3.w[j] + k4.w[j]);
            }
            ++step_index;
            if (options.observer) options.observer(t_next, state);
            const bool boundary = (s + 1 == steps);
            if (boundary || step_index % stride == 0) record(t_next, seg.active);
        }
    }
    return trace;
}

double invariant_drift(const SimulationTrace& trace, const ExponentialKernel& k, double alpha,
                       const ModalControl* control) {
    if (trace.alpha != alpha || trace.kernel_terms != k.size()) {
        throw ParameterMismatch("trace was produced for a different mode or kernel");
    }
    if (control && control->n != trace.n) {
        throw ParameterMismatch("control mode " + std::to_string(control->n) + " does not match trace mode " +
                                std::to_string(trace.n));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double accumulated = control ? control->integral_to(trace.times[i]) : 0.0;
        const double drift = memory_invariant(k, alpha, trace.states[i]) - trace.phi1 - accumulated;
        worst = std::max(worst, std::abs(drift));
    }
    return worst;
}

double free_response_series(const CharacteristicRoots& roots, double phi0, double phi1, double t) {
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const cplx r = roots.roots[i];
        sum += (r * phi0 + phi1) * std::exp(r * t) / roots.lprime[i];
    }
    return sum.real();
}

double forced_response_series(const CharacteristicRoots& roots, const ModalControl& mc, double t) {
    const double tau = std::clamp(t, 0.0, mc.T);
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const cplx r = roots.roots[i];
        cplx inner{0.0, 0.0};
        for (std::size_t j = 0; j < mc.exponents.size(); ++j) {
            const cplx eta = mc.exponents[j];
            const cplx z = eta - r;
            cplx piece;
            if (std::abs(z) < 1e-10) {
                piece = std::exp(r * t - eta * mc.T) * exp_integral(z, tau);
            } else if (z.real() >= 0.0) {
                piece = std::exp(r * (t - tau) + eta * (tau - mc.T)) * (-expm1(-z * tau)) / z;
            } else {
                piece = std::exp(r * t - eta * mc.T) * expm1(z * tau) / z;
            }
            inner += mc.scaled_coeffs[j] * piece;
        }
        sum += inner / roots.lprime[i];
    }
    return sum.real();
}

}  // namespace memwave
