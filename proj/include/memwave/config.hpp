#pragma once

#include "memwave/kernel.hpp"
#include "memwave/moments.hpp"
#include "memwave/spectrum.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace memwave {

struct RandomInitial {
    double beta = 1.0;
    double amplitude = 1.0;
    std::uint64_t seed = 0;
};

/// Parsed and validated run configuration (JSON document, see README).
struct RunConfig {
    std::vector<double> c;
    std::vector<double> gamma;

    std::string domain_type = "interval";  // "interval" | "modal"
    std::vector<double> alpha;             // modal only
    std::vector<double> psi_sup;           // modal only
    int dimension = 1;

    int modes = 0;

    std::vector<double> phi0;  // explicit initial data
    std::vector<double> phi1;
    std::optional<RandomInitial> random;

    Scheme scheme = Scheme::Strict;

    std::optional<double> dt;
    double post_horizon_factor = 5.0;

    ExponentialKernel kernel() const;
    ModeBasis basis() const;
    InitialData initial(const ModeBasis& basis) const;
};

/// Throws ConfigError naming the offending key path.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

}  // namespace memwave
