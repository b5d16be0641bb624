#include "memwave/synthesis.hpp"

#include "memwave/error.hpp"
#include "memwave/parallel.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <string>

namespace memwave {

namespace {

// FNV-1a over the exact bit patterns of the values.
class Fnv1a {
public:
    void add(double v) {
        std::uint64_t bits;
        static_assert(sizeof bits == sizeof v);
        std::memcpy(&bits, &v, sizeof v);
        for (int i = 0; i < 8; ++i) byte(static_cast<unsigned char>(bits >> (8 * i)));
    }
    void add(const std::vector<double>& vs) {
        add(static_cast<double>(vs.size()));
        for (double v : vs) add(v);
    }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
        return buf;
    }

private:
    void byte(unsigned char b) {
        state_ ^= b;
        state_ *= 0x100000001b3ULL;
    }
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::string fingerprint(const ExponentialKernel& k) {
    Fnv1a h;
    h.add(k.amplitudes());
    h.add(k.rates());
    return h.hex();
}

std::string fingerprint(const ModeBasis& basis) {
    Fnv1a h;
    h.add(basis.alphas);
    h.add(basis.psi_sup);
    h.add(static_cast<double>(basis.dimension));
    h.add(basis.kind == BasisKind::Interval ? 0.0 : 1.0);
    return h.hex();
}

std::string fingerprint(const InitialData& data) {
    Fnv1a h;
    h.add(data.phi0);
    h.add(data.phi1);
    return h.hex();
}

double recompute_global_bound(const ControlPlan& plan, const ModeBasis& basis) {
    double sum = 0.0;
    for (std::size_t i = 0; i < plan.modal.size(); ++i) sum += plan.modal[i].sup_bound * basis.psi_sup[i];
    return sum;
}

ControlPlan synthesize(const std::vector<CharacteristicRoots>& roots, const ExponentialKernel& k,
                       const ModeBasis& basis, const InitialData& init, double T, Scheme scheme,
                       const SynthesisOptions& options) {
    if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("horizon: must be positive and finite");
    if (init.phi0.size() != basis.size() || init.phi1.size() != basis.size()) {
        throw ConfigError("initial: coefficient count differs from mode count");
    }
    ControlPlan plan;
    plan.scheme = scheme;
    plan.T = T;
    plan.modal.resize(basis.size());
    parallel_for(basis.size(), [&](std::size_t i) {
        const auto sys = build_moment_system(roots[i], init.phi0[i], init.phi1[i], T, scheme);
        plan.modal[i] = solve_modal_moments(sys, options.control);
    });
    plan.global_bound = recompute_global_bound(plan, basis);
    plan.kernel_fingerprint = fingerprint(k);
    plan.basis_fingerprint = fingerprint(basis);
    plan.data_fingerprint = fingerprint(init);
    if (options.beta && basis.kind == BasisKind::Interval) {
        plan.tail_majorant = interval_tail_majorant(static_cast<int>(basis.size()), *options.beta);
    }
    return plan;
}

ControlPlan synthesize(const ExponentialKernel& k, const ModeBasis& basis, const InitialData& init, double T,
                       Scheme scheme, const SynthesisOptions& options) {
    return synthesize(find_all_roots(k, basis), k, basis, init, T, scheme, options);
}

double eval_control_field(const ControlPlan& plan, const ModeBasis& basis, double t, double x) {
    if (basis.kind != BasisKind::Interval) {
        throw UnsupportedBasis("pointwise evaluation needs the interval eigenfunctions");
    }
    const double norm = std::sqrt(2.0 / std::numbers::pi);
    double sum = 0.0;
    for (std::size_t i = 0; i < plan.modal.size(); ++i) {
        sum += plan.modal[i](t) * norm * std::sin(basis.alphas[i] * x);
    }
    return sum;
}

HorizonSearch find_time_for_bound(const ExponentialKernel& k, const ModeBasis& basis, const InitialData& init,
                                  double M, Scheme scheme, const SynthesisOptions& options) {
    if (!(M > 0.0) || !std::isfinite(M)) throw ConfigError("bound: must be positive and finite");
    const auto roots = find_all_roots(k, basis);
    SynthesisOptions probe_options = options;
    probe_options.control.check_moments = false;

    HorizonSearch search;
    auto probe = [&](double T) {
        const double bound = synthesize(roots, k, basis, init, T, scheme, probe_options).global_bound;
        search.transcript.emplace_back(T, bound);
        return bound;
    };

    constexpr double kMaxHorizon = 1048576.0;  // 2^20
    double hi = 1.0;
    while (probe(hi) > M) {
        hi *= 2.0;
        if (hi > kMaxHorizon) {
            std::string msg = "no horizon up to 2^20 meets the bound; transcript:";
            for (const auto& [T, b] : search.transcript) msg += " (" + std::to_string(T) + ", " + std::to_string(b) + ")";
            throw HorizonOverflow(msg);
        }
    }
    if (hi > 1.0) {
        double lo = hi / 2.0;
        while ((hi - lo) > 1e-2 * hi) {
            const double mid = 0.5 * (lo + hi);
            if (probe(mid) > M) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    search.T = hi;
    search.plan = synthesize(roots, k, basis, init, hi, scheme, options);
    return search;
}

}  // namespace memwave
