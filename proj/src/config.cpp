#include "memwave/config.hpp"

#include "memwave/error.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace memwave {

namespace {

using nlohmann::json;

void allow_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(path + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError((path.empty() ? key : path + "." + key) + ": unknown key");
    }
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError((path.empty() ? key : path + "." + key) + ": missing");
    return obj.at(key);
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path + ": not finite");
    return x;
}

int integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return v.get<int>();
}

std::vector<double> number_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

ExponentialKernel RunConfig::kernel() const { return ExponentialKernel(c, gamma); }

ModeBasis RunConfig::basis() const {
    if (domain_type == "interval") return interval_basis(modes);
    std::vector<double> a(alpha.begin(), alpha.begin() + modes);
    std::vector<double> p(psi_sup.begin(), psi_sup.begin() + modes);
    return modal_basis(std::move(a), std::move(p), dimension);
}

InitialData RunConfig::initial(const ModeBasis& basis) const {
    if (random) return generate_initial_data(basis, random->beta, random->amplitude, random->seed);
    return InitialData{phi0, phi1};
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("parse error: ") + e.what());
    }
    allow_keys(doc, "", {"kernel", "domain", "modes", "initial", "control", "sim"});

    RunConfig cfg;
    const auto& kernel = require(doc, "", "kernel");
    allow_keys(kernel, "kernel", {"c", "gamma"});
    cfg.c = number_list(require(kernel, "kernel", "c"), "kernel.c");
    cfg.gamma = number_list(require(kernel, "kernel", "gamma"), "kernel.gamma");
    (void)cfg.kernel();  // validates

    cfg.modes = integer(require(doc, "", "modes"), "modes");
    if (cfg.modes < 1) throw ConfigError("modes: must be at least 1");

    const auto& domain = require(doc, "", "domain");
    if (!domain.is_object()) throw ConfigError("domain: expected an object");
    const auto& type = require(domain, "domain", "type");
    if (!type.is_string()) throw ConfigError("domain.type: expected a string");
    cfg.domain_type = type.get<std::string>();
    if (cfg.domain_type == "interval") {
        allow_keys(domain, "domain", {"type"});
    } else if (cfg.domain_type == "modal") {
        allow_keys(domain, "domain", {"type", "alpha", "psi_sup", "dimension"});
        cfg.alpha = number_list(require(domain, "domain", "alpha"), "domain.alpha");
        cfg.psi_sup = number_list(require(domain, "domain", "psi_sup"), "domain.psi_sup");
        cfg.dimension = integer(require(domain, "domain", "dimension"), "domain.dimension");
        if (cfg.alpha.size() < static_cast<std::size_t>(cfg.modes)) {
            throw ConfigError("domain.alpha: fewer entries than modes");
        }
    } else {
        throw ConfigError("domain.type: expected \"interval\" or \"modal\"");
    }
    const ModeBasis basis = cfg.basis();

    const auto& initial = require(doc, "", "initial");
    if (!initial.is_object()) throw ConfigError("initial: expected an object");
    if (initial.contains("random")) {
        allow_keys(initial, "initial", {"random"});
        const auto& rnd = initial.at("random");
        allow_keys(rnd, "initial.random", {"beta", "amplitude", "seed"});
        RandomInitial r;
        r.beta = number(require(rnd, "initial.random", "beta"), "initial.random.beta");
        r.amplitude = number(require(rnd, "initial.random", "amplitude"), "initial.random.amplitude");
        const auto& seed = require(rnd, "initial.random", "seed");
        if (!seed.is_number_integer() || seed.get<long long>() < 0) {
            throw ConfigError("initial.random.seed: expected a non-negative integer");
        }
        r.seed = seed.get<std::uint64_t>();
        if (!(r.amplitude > 0.0)) throw ConfigError("initial.random.amplitude: must be positive");
        if (!(r.beta > 0.5 * basis.dimension)) {
            throw ConfigError("initial.random.beta: must exceed dimension/2 (got " + std::to_string(r.beta) + ")");
        }
        cfg.random = r;
    } else {
        allow_keys(initial, "initial", {"phi0", "phi1"});
        cfg.phi0 = number_list(require(initial, "initial", "phi0"), "initial.phi0");
        cfg.phi1 = number_list(require(initial, "initial", "phi1"), "initial.phi1");
        if (cfg.phi0.size() != static_cast<std::size_t>(cfg.modes)) {
            throw ConfigError("initial.phi0: length differs from modes");
        }
        if (cfg.phi1.size() != static_cast<std::size_t>(cfg.modes)) {
            throw ConfigError("initial.phi1: length differs from modes");
        }
    }

    if (doc.contains("control")) {
        const auto& control = doc.at("control");
        allow_keys(control, "control", {"scheme"});
        if (control.contains("scheme")) {
            if (!control.at("scheme").is_string()) throw ConfigError("control.scheme: expected a string");
            cfg.scheme = scheme_from_string(control.at("scheme").get<std::string>());
        }
    }

    if (doc.contains("sim")) {
        const auto& sim = doc.at("sim");
        allow_keys(sim, "sim", {"dt", "post_horizon_factor"});
        if (sim.contains("dt")) {
            cfg.dt = number(sim.at("dt"), "sim.dt");
            if (!(*cfg.dt > 0.0)) throw ConfigError("sim.dt: must be positive");
        }
        if (sim.contains("post_horizon_factor")) {
            cfg.post_horizon_factor = number(sim.at("post_horizon_factor"), "sim.post_horizon_factor");
            if (!(cfg.post_horizon_factor > 0.0)) throw ConfigError("sim.post_horizon_factor: must be positive");
        }
    }
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace memwave
