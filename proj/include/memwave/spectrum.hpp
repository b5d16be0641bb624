#pragma once

#include <cstdint>
#include <vector>

namespace memwave {

enum class BasisKind { Interval, UserSupplied };

/// Spatial eigenstructure: alpha_n are square roots of the Dirichlet Laplacian
/// eigenvalues, psi_sup_n the sup-norms of the L2-orthonormal eigenfunctions.
struct ModeBasis {
    std::vector<double> alphas;
    std::vector<double> psi_sup;
    int dimension = 1;
    BasisKind kind = BasisKind::Interval;

    std::size_t size() const noexcept { return alphas.size(); }
};

/// Coefficients of theta(0) and theta_t(0) in the orthonormal eigenbasis.
struct InitialData {
    std::vector<double> phi0;
    std::vector<double> phi1;
};

/// (0, pi) with psi_n(x) = sqrt(2/pi) sin(n x), alpha_n = n.
ModeBasis interval_basis(int n_max);

/// Validates and wraps a user-supplied spectrum. Throws ConfigError.
ModeBasis modal_basis(std::vector<double> alphas, std::vector<double> psi_sup, int dimension);

/// sum_n coeffs_n^2 alpha_n^{2 beta} over the supplied coefficients.
double sobolev_norm_sq(const ModeBasis& basis, const std::vector<double>& coeffs, double beta);

/// Closed-form majorant of sum_{n > n_max} n^{-2 beta} for the interval basis:
/// n_max^{1 - 2 beta} / (2 beta - 1). Requires beta > 1/2.
double interval_tail_majorant(int n_max, double beta);

/// Uniform variate in [-1, 1] from a 64-bit draw: the top 53 bits scaled.
double unit_interval_symmetric(std::uint64_t bits);

/// phi0_n = amplitude sigma_n alpha_n^{-(beta+2)}, phi1_n = amplitude tau_n
/// alpha_n^{-(beta+1)}, with (sigma_n, tau_n) drawn in that order, mode by mode,
/// from std::mt19937_64 seeded with `seed`. Throws SmoothnessViolation unless
/// beta > dimension / 2.
InitialData generate_initial_data(const ModeBasis& basis, double beta, double amplitude,
                                  std::uint64_t seed);

}  // namespace memwave
