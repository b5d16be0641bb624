#include "memwave/spectrum.hpp"

#include "memwave/error.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace memwave {

ModeBasis interval_basis(int n_max) {
    if (n_max < 1) throw ConfigError("modes: must be at least 1");
    ModeBasis basis;
    basis.kind = BasisKind::Interval;
    basis.dimension = 1;
    const double sup = std::sqrt(2.0 / std::numbers::pi);
    for (int n = 1; n <= n_max; ++n) {
        basis.alphas.push_back(static_cast<double>(n));
        basis.psi_sup.push_back(sup);
    }
    return basis;
}

ModeBasis modal_basis(std::vector<double> alphas, std::vector<double> psi_sup, int dimension) {
    if (alphas.empty()) throw ConfigError("domain.alpha: empty");
    if (psi_sup.size() != alphas.size()) throw ConfigError("domain.psi_sup: length differs from domain.alpha");
    if (dimension < 1) throw ConfigError("domain.dimension: must be at least 1");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!std::isfinite(alphas[i]) || alphas[i] <= 0.0) {
            throw ConfigError("domain.alpha[" + std::to_string(i) + "]: must be positive and finite");
        }
        if (i > 0 && alphas[i] <= alphas[i - 1]) {
            throw ConfigError("domain.alpha[" + std::to_string(i) + "]: not strictly increasing");
        }
        if (!std::isfinite(psi_sup[i]) || psi_sup[i] <= 0.0) {
            throw ConfigError("domain.psi_sup[" + std::to_string(i) + "]: must be positive and finite");
        }
    }
    ModeBasis basis;
    basis.alphas = std::move(alphas);
    basis.psi_sup = std::move(psi_sup);
    basis.dimension = dimension;
    basis.kind = BasisKind::UserSupplied;
    return basis;
}

double sobolev_norm_sq(const ModeBasis& basis, const std::vector<double>& coeffs, double beta) {
    if (coeffs.size() > basis.size()) throw ConfigError("coefficient count exceeds mode count");
    double sum = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        sum += coeffs[n] * coeffs[n] * std::pow(basis.alphas[n], 2.0 * beta);
    }
    return sum;
}

double interval_tail_majorant(int n_max, double beta) {
    return std::pow(static_cast<double>(n_max), 1.0 - 2.0 * beta) / (2.0 * beta - 1.0);
}

double unit_interval_symmetric(std::uint64_t bits) {
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

InitialData generate_initial_data(const ModeBasis& basis, double beta, double amplitude,
                                  std::uint64_t seed) {
    if (!(beta > 0.5 * basis.dimension)) {
        throw SmoothnessViolation("initial.random.beta: must exceed dimension/2 = " +
                                  std::to_string(0.5 * basis.dimension));
    }
    if (!(amplitude > 0.0)) throw ConfigError("initial.random.amplitude: must be positive");
    std::mt19937_64 gen(seed);
    InitialData data;
    for (double alpha : basis.alphas) {
        const double sigma = unit_interval_symmetric(gen());
        const double tau = unit_interval_symmetric(gen());
        data.phi0.push_back(amplitude * sigma * std::pow(alpha, -(beta + 2.0)));
        data.phi1.push_back(amplitude * tau * std::pow(alpha, -(beta + 1.0)));
    }
    return data;
}

}  // namespace memwave
