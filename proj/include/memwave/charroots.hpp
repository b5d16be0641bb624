#pragma once

#include "memwave/kernel.hpp"
#include "memwave/spectrum.hpp"

#include <optional>
#include <vector>

namespace memwave {

/// Real polynomial, coefficients in ascending powers.
struct Polynomial {
    std::vector<double> coeffs;

    std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    cplx operator()(cplx x) const;
    double operator()(double x) const;
};

/// Pole-cleared characteristic polynomial
///   p(lambda) = lambda prod_k (lambda + gamma_k) + alpha^2 sum_k (c_k/gamma_k) prod_{j!=k} (lambda + gamma_j),
/// monic of degree N+1, with l(lambda) prod_k (lambda + gamma_k) = lambda p(lambda).
Polynomial characteristic_polynomial(const ExponentialKernel& k, double alpha);

/// l(lambda) = lambda^2 + alpha^2 lambda khat(lambda).
cplx characteristic_value(const ExponentialKernel& k, double alpha, cplx lambda);

/// l'(lambda) = 2 lambda + alpha^2 sum_k c_k / (lambda + gamma_k)^2.
cplx lprime(const ExponentialKernel& k, double alpha, cplx lambda);

/// Full zero set of l for one mode.
///
/// Layout of `roots` (and the parallel `lprime` vector):
///   [0]            the zero root
///   [1], [2]       lambda+ = -mu + i nu and its conjugate (generic), or the two
///                  extra real roots when the residual quadratic has real roots
///   [3 .. N+1]     -q_k, q ascending
struct CharacteristicRoots {
    int n = 0;
    double alpha = 0.0;
    std::vector<cplx> roots;
    std::vector<cplx> lprime;
    std::optional<double> mu;
    std::optional<double> nu;
    std::vector<double> q;
    bool is_generic = true;

    std::size_t size() const noexcept { return roots.size(); }
    /// Smallest |Re lambda| over nonzero roots; the slowest decay rate.
    double slowest_decay() const;
};

/// Brackets N-1 real roots between the kernel poles, deflates the rest to a
/// quadratic, then Newton-polishes everything on l itself.
/// Throws DegenerateRoots if two roots are not separated by 1e-8 max(1,|lambda|).
CharacteristicRoots find_roots(const ExponentialKernel& k, double alpha, int n = 0);

struct ResidueSums {
    cplx paper_sum;      // nonzero roots only
    cplx corrected_sum;  // all roots including lambda = 0
    double max_term;     // max |1 / l'| over all roots
};

ResidueSums residue_identity(const CharacteristicRoots& roots);

struct ModeAsymptotics {
    int n = 0;
    double alpha = 0.0;
    std::optional<double> mu;
    std::optional<double> speed;  // nu / alpha
    std::vector<double> q;
    std::optional<double> mu_deviation_scaled;  // alpha^2 |mu - mu_ref|
    std::vector<double> q_deviation_scaled;     // alpha^2 |q_k - q_ref,k|
};

struct AsymptoticsReport {
    double mu_ref = 0.0;     // -K'(0) / (2 K(0))
    double speed_ref = 0.0;  // sqrt(K(0))
    std::vector<double> q_ref;
    std::vector<ModeAsymptotics> modes;
};

AsymptoticsReport root_asymptotics(const ExponentialKernel& k, const ModeBasis& basis);

/// Roots for every mode of the basis, computed in parallel, ordered by mode.
std::vector<CharacteristicRoots> find_all_roots(const ExponentialKernel& k, const ModeBasis& basis);

}  // namespace memwave
