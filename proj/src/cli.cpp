#include "memwave/cli.hpp"

#include "memwave/charroots.hpp"
#include "memwave/config.hpp"
#include "memwave/error.hpp"
#include "memwave/plan_io.hpp"
#include "memwave/simulate.hpp"
#include "memwave/synthesis.hpp"
#include "memwave/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace memwave {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw ConfigError(path + ": cannot open for writing");
    file << text;
}

SynthesisOptions synthesis_options(const RunConfig& cfg) {
    SynthesisOptions opts;
    if (cfg.random) opts.beta = cfg.random->beta;
    return opts;
}

std::string roots_csv(const RunConfig& cfg) {
    const auto kernel = cfg.kernel();
    const auto basis = cfg.basis();
    std::ostringstream csv;
    csv << "n,alpha,mu,nu";
    for (std::size_t k = 1; k < kernel.size(); ++k) csv << ",q_" << k;
    csv << ",paper_residue_sum,corrected_residue_sum\n";
    for (const auto& r : find_all_roots(kernel, basis)) {
        const auto sums = residue_identity(r);
        csv << r.n << ',' << num(r.alpha) << ',' << (r.mu ? num(*r.mu) : "") << ',' << (r.nu ? num(*r.nu) : "");
        for (double q : r.q) csv << ',' << num(q);
        csv << ',' << num(sums.paper_sum.real()) << ',' << num(sums.corrected_sum.real()) << '\n';
    }
    return csv.str();
}

std::string simulate_csv(const RunConfig& cfg, const ControlPlan& plan, double t_end, int stride) {
    const auto kernel = cfg.kernel();
    const auto basis = cfg.basis();
    const auto init = cfg.initial(basis);
    const double dt = cfg.dt.value_or(plan.T / 20000.0);
    std::ostringstream csv;
    csv << "t,n,theta,dtheta,u,invariant_drift";
    for (std::size_t k = 1; k <= kernel.size(); ++k) csv << ",w_" << k;
    csv << '\n';
    SimOptions opts;
    opts.record_every = stride;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto trace = simulate_mode(kernel, basis.alphas[i], init.phi0[i], init.phi1[i], &plan.modal[i], t_end,
                                         dt, opts, plan.modal[i].n);
        for (std::size_t s = 0; s < trace.times.size(); ++s) {
            const auto& st = trace.states[s];
            csv << num(trace.times[s]) << ',' << trace.n << ',' << num(st.theta) << ',' << num(st.dtheta) << ','
                << num(trace.controls[s]) << ',' << num(trace.drift[s]);
            for (double w : st.w) csv << ',' << num(w);
            csv << '\n';
        }
    }
    return csv.str();
}

VerifyOptions verify_options(const RunConfig& cfg) {
    VerifyOptions opts;
    opts.dt = cfg.dt.value_or(0.0);
    opts.post_horizon_factor = cfg.post_horizon_factor;
    return opts;
}

std::vector<double> parse_horizons(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size() || !(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("--horizons: invalid value \"" + item + "\"");
        }
    }
    if (out.empty()) throw ConfigError("--horizons: empty list");
    return out;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounded null-control synthesis for the wave equation with exponential memory", "memwave"};
    app.require_subcommand(1);

    std::string config_path;
    std::string plan_path;
    std::string out_path;

    auto* roots = app.add_subcommand("roots", "per-mode characteristic roots as CSV");
    roots->add_option("--config", config_path)->required();
    roots->add_option("-o,--out", out_path);

    std::optional<double> horizon;
    std::optional<double> bound;
    auto* synth = app.add_subcommand("synthesize", "build a control plan");
    synth->add_option("--config", config_path)->required();
    auto* horizon_opt = synth->add_option("--horizon", horizon, "fixed horizon T");
    auto* bound_opt = synth->add_option("--bound", bound, "search T so that |u| <= M");
    horizon_opt->excludes(bound_opt);
    bound_opt->excludes(horizon_opt);
    synth->add_option("-o,--out", out_path);

    std::optional<double> t_end;
    int stride = 100;
    auto* sim = app.add_subcommand("simulate", "integrate the controlled modal dynamics");
    sim->add_option("--config", config_path)->required();
    sim->add_option("--plan", plan_path)->required();
    sim->add_option("--t-end", t_end, "end time (default: plan horizon)");
    sim->add_option("--stride", stride, "record every k-th step")->check(CLI::PositiveNumber);
    sim->add_option("-o,--out", out_path);

    auto* ver = app.add_subcommand("verify", "simulate a plan and check every criterion");
    ver->add_option("--config", config_path)->required();
    ver->add_option("--plan", plan_path)->required();
    ver->add_option("-o,--out", out_path);

    std::string horizons;
    auto* sweep = app.add_subcommand("sweep", "global bound and terminal residual over horizons");
    sweep->add_option("--config", config_path)->required();
    sweep->add_option("--horizons", horizons)->required();
    sweep->add_option("-o,--out", out_path);

    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "memwave: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        const RunConfig cfg = parse_config(config_path);
        if (*roots) {
            emit(roots_csv(cfg), out_path, out);
            return kExitOk;
        }
        if (*synth) {
            if (!horizon && !bound) throw ConfigError("synthesize: one of --horizon or --bound is required");
            const auto kernel = cfg.kernel();
            const auto basis = cfg.basis();
            const auto init = cfg.initial(basis);
            ControlPlan plan;
            if (horizon) {
                plan = synthesize(kernel, basis, init, *horizon, cfg.scheme, synthesis_options(cfg));
            } else {
                auto search = find_time_for_bound(kernel, basis, init, *bound, cfg.scheme, synthesis_options(cfg));
                for (const auto& [T, b] : search.transcript) err << "probe T=" << num(T) << " bound=" << num(b) << '\n';
                plan = std::move(search.plan);
            }
            emit(plan_to_string(plan), out_path, out);
            return kExitOk;
        }
        if (*sim) {
            const auto plan = read_plan(plan_path);
            emit(simulate_csv(cfg, plan, t_end.value_or(plan.T), stride), out_path, out);
            return kExitOk;
        }
        if (*ver) {
            const auto kernel = cfg.kernel();
            const auto basis = cfg.basis();
            const auto plan = read_plan(plan_path);
            const auto report = verify_plan(kernel, basis, cfg.initial(basis), plan, verify_options(cfg));
            emit(report_to_string(report), out_path, out);
            for (const auto& c : report.criteria) {
                err << (c.pass ? "PASS " : "FAIL ") << c.name << " worst_ratio=" << num(c.worst_ratio) << '\n';
            }
            return report.all_pass ? kExitOk : kExitVerification;
        }
        if (*sweep) {
            const auto kernel = cfg.kernel();
            const auto basis = cfg.basis();
            const auto init = cfg.initial(basis);
            const auto roots_all = find_all_roots(kernel, basis);
            std::ostringstream csv;
            csv << "T,global_bound,max_terminal_residual\n";
            for (double T : parse_horizons(horizons)) {
                const auto plan = synthesize(roots_all, kernel, basis, init, T, cfg.scheme, synthesis_options(cfg));
                auto opts = verify_options(cfg);
                opts.field_grid = 0;
                const auto report = verify_plan(kernel, basis, init, plan, opts);
                double residual = 0.0;
                for (const auto& m : report.modes) {
                    residual = std::max({residual, std::abs(m.terminal_theta), std::abs(m.terminal_dtheta)});
                }
                csv << num(T) << ',' << num(plan.global_bound) << ',' << num(residual) << '\n';
            }
            emit(csv.str(), out_path, out);
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "memwave: " << e.what() << '\n';
        return e.kind() == ErrorKind::Numerical ? kExitNumerical : kExitConfig;
    }
    return kExitConfig;
}

}  // namespace memwave
