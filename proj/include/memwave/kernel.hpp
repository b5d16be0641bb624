#pragma once

#include "memwave/numeric.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace memwave {

/// Memory kernel K(t) = sum_j (c_j / gamma_j) exp(-gamma_j t).
///
/// Terms are stored sorted by decay rate, ascending. Construction rejects
/// empty, mismatched, non-positive, non-finite or duplicate entries with a
/// ConfigError naming the offending field.
class ExponentialKernel {
public:
    ExponentialKernel(std::vector<double> c, std::vector<double> gamma);

    std::size_t size() const noexcept { return c_.size(); }
    const std::vector<double>& amplitudes() const noexcept { return c_; }
    const std::vector<double>& rates() const noexcept { return gamma_; }

    /// K(t), t >= 0.
    double value(double t) const;
    /// K'(t) = -sum_j c_j exp(-gamma_j t).
    double derivative(double t) const;

    /// Laplace transform sum_k c_k / (gamma_k (lambda + gamma_k)).
    /// Throws PoleProximity within 1e-12 max(1,|lambda|) of a pole -gamma_k.
    cplx khat(cplx lambda) const;
    /// d/dlambda of khat.
    cplx khat_derivative(cplx lambda) const;
    /// d/dlambda [lambda khat(lambda)] = sum_k c_k / (lambda + gamma_k)^2.
    cplx lambda_khat_derivative(cplx lambda) const;

    /// Positive q_k with khat(-q_k) = 0, one in each gap (gamma_k, gamma_{k+1}),
    /// ascending. Empty for a single-term kernel.
    std::vector<double> khat_zeros() const;

private:
    void check_pole_distance(cplx lambda) const;

    std::vector<double> c_;
    std::vector<double> gamma_;
};

inline double kernel_value(const ExponentialKernel& k, double t) { return k.value(t); }
inline double kernel_derivative(const ExponentialKernel& k, double t) { return k.derivative(t); }
inline cplx laplace_khat(const ExponentialKernel& k, cplx lambda) { return k.khat(lambda); }
inline cplx khat_derivative(const ExponentialKernel& k, cplx lambda) {
    return k.khat_derivative(lambda);
}
inline std::vector<double> khat_zeros(const ExponentialKernel& k) { return k.khat_zeros(); }

/// Bisection for a sign change of f on [lo, hi]. Throws BracketFailure if the
/// endpoints do not bracket or the bracket does not collapse in 200 halvings.
double bisect_root(const std::function<double(double)>& f, double lo, double hi);

}  // namespace memwave
