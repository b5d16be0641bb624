#include "memwave/charroots.hpp"

#include "memwave/error.hpp"
#include "memwave/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace memwave {

cplx Polynomial::operator()(cplx x) const {
    cplx acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace {

// Multiply `poly` (ascending) by (x + a).
std::vector<double> times_linear(const std::vector<double>& poly, double a) {
    std::vector<double> out(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        out[i] += a * poly[i];
        out[i + 1] += poly[i];
    }
    return out;
}

// Synthetic division by (x - r); drops the remainder.
std::vector<double> deflate(const std::vector<double>& poly, double r) {
    const std::size_t deg = poly.size() - 1;
    std::vector<double> out(deg, 0.0);
    double carry = poly[deg];
    for (std::size_t i = deg; i-- > 0;) {
        out[i] = carry;
        carry = poly[i] + carry * r;
    }
    return out;
}

// p evaluated in product form, which stays accurate next to the kernel poles.
double cleared_value(const ExponentialKernel& k, double alpha, double x) {
    const auto& c = k.amplitudes();
    const auto& g = k.rates();
    double head = x;
    for (double gj : g) head *= x + gj;
    double tail = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        double prod = c[i] / g[i];
        for (std::size_t j = 0; j < k.size(); ++j) {
            if (j != i) prod *= x + g[j];
        }
        tail += prod;
    }
    return head + alpha * alpha * tail;
}

cplx newton_polish(const ExponentialKernel& k, double alpha, cplx z) {
    for (int iter = 0; iter < 50; ++iter) {
        const cplx step = characteristic_value(k, alpha, z) / lprime(k, alpha, z);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
        if (std::abs(step) <= 4e-16 * std::abs(z)) break;
    }
    return z;
}

}  // namespace

Polynomial characteristic_polynomial(const ExponentialKernel& k, double alpha) {
    const auto& c = k.amplitudes();
    const auto& g = k.rates();
    std::vector<double> head{0.0, 1.0};  // lambda
    for (double gj : g) head = times_linear(head, gj);
    std::vector<double> result = head;
    for (std::size_t i = 0; i < k.size(); ++i) {
        std::vector<double> term{c[i] / g[i]};
        for (std::size_t j = 0; j < k.size(); ++j) {
            if (j != i) term = times_linear(term, g[j]);
        }
        for (std::size_t p = 0; p < term.size(); ++p) result[p] += alpha * alpha * term[p];
    }
    return Polynomial{std::move(result)};
}

cplx characteristic_value(const ExponentialKernel& k, double alpha, cplx lambda) {
    return lambda * lambda + alpha * alpha * lambda * k.khat(lambda);
}

cplx lprime(const ExponentialKernel& k, double alpha, cplx lambda) {
    return 2.0 * lambda + alpha * alpha * k.lambda_khat_derivative(lambda);
}

double CharacteristicRoots::slowest_decay() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < roots.size(); ++i) best = std::min(best, -roots[i].real());
    return best;
}

CharacteristicRoots find_roots(const ExponentialKernel& k, double alpha, int n) {
    const auto& g = k.rates();
    const std::size_t terms = k.size();

    std::vector<double> real_roots;
    for (std::size_t j = 0; j + 1 < terms; ++j) {
        real_roots.push_back(bisect_root([&](double x) { return cleared_value(k, alpha, x); },
                                         -g[j + 1], -g[j]));
    }

    std::vector<double> remainder = characteristic_polynomial(k, alpha).coeffs;
    for (double r : real_roots) remainder = deflate(remainder, r);
    // remainder is now monic: x^2 + b x + c0
    const double b = remainder[1];
    const double c0 = remainder[0];
    const double disc = b * b - 4.0 * c0;

    CharacteristicRoots out;
    out.n = n;
    out.alpha = alpha;
    out.roots.push_back({0.0, 0.0});

    if (disc < 0.0) {
        cplx upper{-0.5 * b, 0.5 * std::sqrt(-disc)};
        upper = newton_polish(k, alpha, upper);
        if (upper.imag() < 0.0) upper = std::conj(upper);
        out.roots.push_back(upper);
        out.roots.push_back(std::conj(upper));
        out.mu = -upper.real();
        out.nu = upper.imag();
        out.is_generic = true;
    } else {
        // stable quadratic formula
        const double s = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        double r1 = s;
        double r2 = (s != 0.0) ? c0 / s : 0.0;
        r1 = newton_polish(k, alpha, r1).real();
        r2 = newton_polish(k, alpha, r2).real();
        if (r1 < r2) std::swap(r1, r2);
        out.roots.push_back(r1);
        out.roots.push_back(r2);
        out.is_generic = false;
    }

    for (double r : real_roots) out.q.push_back(-newton_polish(k, alpha, r).real());
    std::sort(out.q.begin(), out.q.end());
    for (double qk : out.q) out.roots.push_back(-qk);

    double scale = 1.0;
    for (const auto& r : out.roots) scale = std::max(scale, std::abs(r));
    for (std::size_t i = 1; i < out.roots.size(); ++i) {
        const cplx r = out.roots[i];
        const cplx residual = r + alpha * alpha * k.khat(r);
        if (!(std::abs(residual) <= 1e-10 * std::max(1.0, std::norm(r)))) {
            throw DegenerateRoots("mode " + std::to_string(n) + ": root polish did not converge");
        }
    }
    for (std::size_t i = 0; i < out.roots.size(); ++i) {
        for (std::size_t j = i + 1; j < out.roots.size(); ++j) {
            if (std::abs(out.roots[i] - out.roots[j]) <= 1e-8 * scale) {
                throw DegenerateRoots("mode " + std::to_string(n) + ": roots " + std::to_string(i) +
                                      " and " + std::to_string(j) + " are not separated");
            }
        }
    }
    for (const auto& r : out.roots) out.lprime.push_back(lprime(k, alpha, r));
    return out;
}

ResidueSums residue_identity(const CharacteristicRoots& roots) {
    ResidueSums sums{};
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const cplx term = 1.0 / roots.lprime[i];
        sums.max_term = std::max(sums.max_term, std::abs(term));
        if (i > 0) sums.paper_sum += term;
    }
    sums.corrected_sum = sums.paper_sum + 1.0 / roots.lprime[0];
    return sums;
}

std::vector<CharacteristicRoots> find_all_roots(const ExponentialKernel& k, const ModeBasis& basis) {
    std::vector<CharacteristicRoots> all(basis.size());
    parallel_for(basis.size(), [&](std::size_t i) {
        all[i] = find_roots(k, basis.alphas[i], static_cast<int>(i + 1));
    });
    return all;
}

AsymptoticsReport root_asymptotics(const ExponentialKernel& k, const ModeBasis& basis) {
    AsymptoticsReport report;
    const double k0 = k.value(0.0);
    report.mu_ref = -k.derivative(0.0) / (2.0 * k0);
    report.speed_ref = std::sqrt(k0);
    report.q_ref = k.khat_zeros();

    for (const auto& roots : find_all_roots(k, basis)) {
        ModeAsymptotics m;
        m.n = roots.n;
        m.alpha = roots.alpha;
        m.q = roots.q;
        const double a2 = roots.alpha * roots.alpha;
        if (roots.is_generic) {
            m.mu = roots.mu;
            m.speed = *roots.nu / roots.alpha;
            m.mu_deviation_scaled = a2 * std::abs(*roots.mu - report.mu_ref);
        }
        for (std::size_t j = 0; j < roots.q.size(); ++j) {
            m.q_deviation_scaled.push_back(a2 * std::abs(roots.q[j] - report.q_ref[j]));
        }
        report.modes.push_back(std::move(m));
    }
    return report;
}

}  // namespace memwave
