#include "memwave/kernel.hpp"

#include "memwave/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace memwave {

namespace {

void require_positive_finite(const std::vector<double>& v, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            throw ConfigError(std::string("kernel.") + name + "[" + std::to_string(i) + "]: not finite");
        }
        if (v[i] <= 0.0) {
            throw ConfigError(std::string("kernel.") + name + "[" + std::to_string(i) +
                              "]: must be positive");
        }
    }
}

}  // namespace

ExponentialKernel::ExponentialKernel(std::vector<double> c, std::vector<double> gamma) {
    if (c.empty()) throw ConfigError("kernel.c: at least one term required");
    if (c.size() != gamma.size()) throw ConfigError("kernel.gamma: length differs from kernel.c");
    require_positive_finite(c, "c");
    require_positive_finite(gamma, "gamma");

    std::vector<std::size_t> order(c.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return gamma[a] < gamma[b]; });
    for (auto i : order) {
        if (!gamma_.empty() && gamma[i] == gamma_.back()) {
            throw ConfigError("kernel.gamma: duplicate");
        }
        c_.push_back(c[i]);
        gamma_.push_back(gamma[i]);
    }
}

double ExponentialKernel::value(double t) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < size(); ++j) sum += c_[j] / gamma_[j] * std::exp(-gamma_[j] * t);
    return sum;
}

double ExponentialKernel::derivative(double t) const {
    double sum = 0.0;
    for (std::size_t j = 0; j < size(); ++j) sum -= c_[j] * std::exp(-gamma_[j] * t);
    return sum;
}

void ExponentialKernel::check_pole_distance(cplx lambda) const {
    const double tol = 1e-12 * std::max(1.0, std::abs(lambda));
    for (double g : gamma_) {
        if (std::abs(lambda + g) <= tol) {
            throw PoleProximity("khat evaluated within tolerance of pole -" + std::to_string(g));
        }
    }
}

cplx ExponentialKernel::khat(cplx lambda) const {
    check_pole_distance(lambda);
    cplx sum{0.0, 0.0};
    for (std::size_t k = 0; k < size(); ++k) sum += c_[k] / (gamma_[k] * (lambda + gamma_[k]));
    return sum;
}

cplx ExponentialKernel::khat_derivative(cplx lambda) const {
    check_pole_distance(lambda);
    cplx sum{0.0, 0.0};
    for (std::size_t k = 0; k < size(); ++k) {
        const cplx d = lambda + gamma_[k];
        sum -= c_[k] / (gamma_[k] * d * d);
    }
    return sum;
}

cplx ExponentialKernel::lambda_khat_derivative(cplx lambda) const {
    check_pole_distance(lambda);
    cplx sum{0.0, 0.0};
    for (std::size_t k = 0; k < size(); ++k) {
        const cplx d = lambda + gamma_[k];
        sum += c_[k] / (d * d);
    }
    return sum;
}

std::vector<double> ExponentialKernel::khat_zeros() const {
    // Pole-cleared numerator: sum_k (c_k/gamma_k) prod_{j != k} (lambda + gamma_j).
    // At lambda = -gamma_k only the k-th term survives, so the endpoints of each
    // gap carry opposite signs.
    auto numerator = [this](double lambda) {
        double sum = 0.0;
        for (std::size_t k = 0; k < size(); ++k) {
            double prod = c_[k] / gamma_[k];
            for (std::size_t j = 0; j < size(); ++j) {
                if (j != k) prod *= lambda + gamma_[j];
            }
            sum += prod;
        }
        return sum;
    };
    std::vector<double> q;
    for (std::size_t k = 0; k + 1 < size(); ++k) {
        q.push_back(-bisect_root(numerator, -gamma_[k + 1], -gamma_[k]));
    }
    std::sort(q.begin(), q.end());
    return q;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw BracketFailure("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) return mid;
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    throw BracketFailure("bisection did not converge in 200 iterations");
}

}  // namespace memwave
