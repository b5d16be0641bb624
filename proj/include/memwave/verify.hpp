#pragma once

#include "memwave/simulate.hpp"
#include "memwave/synthesis.hpp"

#include <string>
#include <vector>

namespace memwave {

struct ModeVerification {
    int n = 0;
    double scale = 0.0;  // |phi0| + |phi1| + 1e-12
    double terminal_theta = 0.0;
    double terminal_dtheta = 0.0;
    std::vector<double> terminal_memory;  // w_k(T)
    double rest_residual = 0.0;           // max |theta| on (T, T + factor / mu]
    double predicted_defect = 0.0;
    double observed_defect = 0.0;  // theta(T) from simulation
    double moment_residual = 0.0;
    double sup_u = 0.0;
    double imag_ratio = 0.0;  // max |Im u| / max(1, max |u|) over samples
    double drift = 0.0;       // conservation-law drift over [0, T + window]
};

struct CriterionResult {
    std::string name;
    double worst_ratio = 0.0;  // max over modes of value / tolerance; pass iff < 1
    bool pass = true;
};

struct VerificationReport {
    double T = 0.0;
    Scheme scheme = Scheme::Strict;
    double global_bound = 0.0;
    double sampled_field_max = 0.0;
    bool field_sampled = false;
    std::vector<ModeVerification> modes;
    std::vector<CriterionResult> criteria;
    bool all_pass = true;
};

struct VerifyOptions {
    double dt = 0.0;  // 0 selects T / 20000
    double post_horizon_factor = 5.0;
    int field_grid = 256;
};

/// (phi1 + int_0^T u) / l'(0): the zero-root residue left at time T.
double predicted_defect(const CharacteristicRoots& roots, double phi1, const ModalControl& mc);

/// Simulates every mode of the plan and evaluates the pass criteria. Throws
/// ParameterMismatch if the plan fingerprints differ from the supplied setup.
VerificationReport verify_plan(const ExponentialKernel& k, const ModeBasis& basis, const InitialData& init,
                               const ControlPlan& plan, const VerifyOptions& options = {});

/// Criterion table derived from the stored per-mode values alone.
std::vector<CriterionResult> evaluate_criteria(const VerificationReport& report);

}  // namespace memwave
