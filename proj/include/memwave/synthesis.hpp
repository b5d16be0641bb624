#pragma once

#include "memwave/moments.hpp"
#include "memwave/spectrum.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace memwave {

/// Distributed control u(t, x) = sum_n u_n(t) psi_n(x) over modes 1..n_max.
struct ControlPlan {
    Scheme scheme = Scheme::Strict;
    double T = 0.0;
    std::vector<ModalControl> modal;
    double global_bound = 0.0;  // sum_n sup_bound_n psi_sup_n
    std::string kernel_fingerprint;
    std::string basis_fingerprint;
    std::string data_fingerprint;
    /// Majorant of sum_{n > n_max} alpha_n^{-2 beta} (interval basis, random data only).
    std::optional<double> tail_majorant;
};

struct SynthesisOptions {
    ControlOptions control;
    /// Smoothness index of the data, when known; enables the tail majorant.
    std::optional<double> beta;
};

std::string fingerprint(const ExponentialKernel& k);
std::string fingerprint(const ModeBasis& basis);
std::string fingerprint(const InitialData& data);

/// sum_n sup_bound_n psi_sup_n, recomputed from the modal controls.
double recompute_global_bound(const ControlPlan& plan, const ModeBasis& basis);

/// Roots, moment system and modal control for every mode, in parallel.
/// Propagates DegenerateRoots / SingularSystem carrying the mode index.
ControlPlan synthesize(const ExponentialKernel& k, const ModeBasis& basis, const InitialData& init, double T,
                       Scheme scheme, const SynthesisOptions& options = {});

/// Same as synthesize but reuses precomputed roots.
ControlPlan synthesize(const std::vector<CharacteristicRoots>& roots, const ExponentialKernel& k,
                       const ModeBasis& basis, const InitialData& init, double T, Scheme scheme,
                       const SynthesisOptions& options = {});

/// u(t, x) for the interval basis. Throws UnsupportedBasis for user spectra.
double eval_control_field(const ControlPlan& plan, const ModeBasis& basis, double t, double x);

struct HorizonSearch {
    double T = 0.0;
    ControlPlan plan;
    std::vector<std::pair<double, double>> transcript;  // (T, global_bound) per probe
};

/// Doubling from T = 1 until the global bound drops to M, then bisection down
/// to a relative bracket width of 1e-2. Throws HorizonOverflow past T = 2^20.
HorizonSearch find_time_for_bound(const ExponentialKernel& k, const ModeBasis& basis, const InitialData& init,
                                  double M, Scheme scheme, const SynthesisOptions& options = {});

}  // namespace memwave
