#pragma once

#include "memwave/charroots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace memwave {

/// strict: the N+1 nonzero-root moments plus the eta = 0 moment (N+2 total).
/// paper:  the N+1 nonzero-root moments only.
enum class Scheme { Strict, Paper };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

/// Moment problem  int_0^T u(s) e^{eta_i s} ds = target_i  for one mode.
struct MomentSystem {
    int n = 0;
    double T = 0.0;
    Scheme scheme = Scheme::Strict;
    std::vector<cplx> exponents;  // eta_i = -lambda_i
    std::vector<cplx> targets;    // -(phi1 + lambda_i phi0)

    std::size_t size() const noexcept { return exponents.size(); }
};

/// Modal control u(t) = Re sum_i C'_i exp(eta_i (t - T)), 0 <= t <= T.
///
/// All exponents have Re eta >= 0, so every term is bounded by |C'_i| on the
/// horizon and `majorant` = sum |C'_i| bounds sup |u|.
struct ModalControl {
    int n = 0;
    double T = 0.0;
    std::vector<cplx> exponents;
    std::vector<cplx> scaled_coeffs;
    /// Low-order parts: scaled_coeffs + scaled_coeffs_lo carries the solution
    /// to quad precision. Empty means zero.
    std::vector<cplx> scaled_coeffs_lo;
    double sup_bound = 0.0;        // min(majorant, refined sampled maximum)
    double majorant = 0.0;         // sum |C'_i|
    double integral = 0.0;         // int_0^T u
    double moment_residual = 0.0;  // max relative moment residual, by quadrature

    /// Complex-valued sum; its imaginary part is rounding noise.
    cplx complex_value(double t) const;
    /// Throws OutOfHorizon outside [0, T].
    double operator()(double t) const;
    /// int_0^{min(t,T)} u(s) ds in closed form; u is taken as zero after T.
    double integral_to(double t) const;
};

MomentSystem build_moment_system(const CharacteristicRoots& roots, double phi0, double phi1, double T,
                                 Scheme scheme);

/// int_0^T exp((eta_i + eta_j) s) ds, with the value T when |eta_i + eta_j| < 1e-13.
cplx gram_entry(cplx eta_i, cplx eta_j, double T);

/// Gram entry after row scaling by exp(-eta_i T) and column substitution
/// C_j = C'_j exp(-eta_j T): (1 - exp(-(eta_i + eta_j) T)) / (eta_i + eta_j).
cplx scaled_gram_entry(cplx eta_i, cplx eta_j, double T);

/// Raw solution C' of the scaled system by partially pivoted LU, before the
/// conjugate symmetrisation applied by solve_modal_moments.
/// Throws SingularSystem when a pivot falls below 1e-14 of the matrix norm.
std::vector<cplx> solve_scaled_system(const MomentSystem& sys);

struct ControlOptions {
    bool check_moments = true;
    int sup_samples = 4096;
};

/// LU solve refined to quad precision, conjugate-symmetrised and split into
/// double high and low parts.
ModalControl solve_modal_moments(const MomentSystem& sys, const ControlOptions& options = {});

/// Independent quadrature check of every moment equation: max over i of
/// |int_0^T u e^{eta_i s} ds - target_i| / max(1, |target_i|), evaluated in
/// quad precision in the equivalent scaled form (both sides times e^{-eta_i T})
/// by adaptive composite Gauss-Legendre. Uses the full-precision coefficients.
double moment_residual(const MomentSystem& sys, const ModalControl& mc);

double eval_modal_control(const ModalControl& mc, double t);
double modal_integral(const ModalControl& mc);

/// Refined maximum of |u| on [0, T]: uniform sampling followed by
/// golden-section refinement around the largest sampled peaks.
double sampled_sup(const ModalControl& mc, int samples = 4096);

/// det [1 / (q_i + q_j)] = prod_{i>j} (q_i - q_j)^2 / prod_{i,j} (q_i + q_j).
double cauchy_determinant(const std::vector<double>& q);

struct DeterminantDiagnostics {
    cplx det_scaled;       // det G'(T)
    double condition = 0;  // 1-norm condition number of G'(T)
    /// det [1/(eta_i + eta_j)], the T -> infinity limit of det G'. Absent when
    /// eta = 0 is in the system (the limit diverges).
    std::optional<cplx> det_limit;
    std::optional<double> relative_gap;  // |det G' - det_limit| / |det_limit|
    /// Generic modes only: Cauchy determinant P of the real exponents and the
    /// leading term -P / (2 mu)^2 that det_limit approaches as nu grows.
    std::optional<double> cauchy_p;
    std::optional<double> leading_term;
};

DeterminantDiagnostics determinant_diagnostics(const MomentSystem& sys);

}  // namespace memwave
