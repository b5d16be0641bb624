#pragma once

#include "memwave/charroots.hpp"
#include "memwave/moments.hpp"

#include <functional>
#include <vector>

namespace memwave {

/// theta_n, theta_n' and the memory states w_k(t) = int_0^t e^{-gamma_k (t-s)} theta_n(s) ds.
/// With these the convolution term is local:
///   theta'' = -alpha^2 K(0) theta + alpha^2 sum_k c_k w_k + u,   w_k' = theta - gamma_k w_k.
struct ModalState {
    double theta = 0.0;
    double dtheta = 0.0;
    std::vector<double> w;
};

struct SimulationTrace {
    int n = 0;
    double alpha = 0.0;
    std::size_t kernel_terms = 0;
    double phi0 = 0.0;
    double phi1 = 0.0;
    std::vector<double> times;
    std::vector<ModalState> states;
    std::vector<double> controls;
    std::vector<double> drift;  // |I(t) - phi1 - int_0^t u| per sample
};

struct SimOptions {
    /// Keep every k-th step in the trace. The first and last states, and the
    /// state at the control horizon, are always kept.
    int record_every = 1;
    /// Called after every step (and once at t = 0) with the current state.
    std::function<void(double, const ModalState&)> observer;
};

/// Classical RK4 with uniform steps no longer than dt. When a control is given
/// the grid is split at its horizon T so no step straddles the switch-off;
/// u is zero after T. `control` may be null for the free problem.
/// Throws StepSizeInvalid for non-positive or non-finite dt / t_end.
SimulationTrace simulate_mode(const ExponentialKernel& k, double alpha, double phi0, double phi1,
                              const ModalControl* control, double t_end, double dt,
                              const SimOptions& options = {}, int n = 0);

/// I(t) = theta' + alpha^2 sum_k (c_k / gamma_k) w_k, whose derivative is u.
double memory_invariant(const ExponentialKernel& k, double alpha, const ModalState& state);

/// max over the trace of |I(t) - phi1 - int_0^t u|. Throws ParameterMismatch if
/// the trace was produced with a different alpha or kernel size.
double invariant_drift(const SimulationTrace& trace, const ExponentialKernel& k, double alpha,
                       const ModalControl* control);

/// Residue series over all roots including lambda = 0:
///   theta(t) = sum_r (r phi0 + phi1) e^{r t} / l'(r).
double free_response_series(const CharacteristicRoots& roots, double phi0, double phi1, double t);

/// Zero-data response to the control:
///   theta(t) = sum_r [ int_0^{min(t,T)} u(s) e^{r (t-s)} ds ] / l'(r),
/// the inner integrals in closed form.
double forced_response_series(const CharacteristicRoots& roots, const ModalControl& mc, double t);

}  // namespace memwave
