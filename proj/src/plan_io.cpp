#include "memwave/plan_io.hpp"

#include "memwave/error.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace memwave {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_list(const std::vector<cplx>& values) {
    ordered_json out = ordered_json::array();
    for (const auto& v : values) out.push_back({hex_double(v.real()), hex_double(v.imag())});
    return out;
}

std::vector<cplx> parse_complex_list(const ordered_json& arr, const std::string& path) {
    if (!arr.is_array()) throw ConfigError(path + ": expected an array");
    std::vector<cplx> out;
    for (const auto& pair : arr) {
        if (!pair.is_array() || pair.size() != 2) throw ConfigError(path + ": expected [re, im] pairs");
        out.emplace_back(parse_hex_double(pair[0].get<std::string>()), parse_hex_double(pair[1].get<std::string>()));
    }
    return out;
}

double field(const ordered_json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_string()) {
        throw ConfigError(std::string("plan.") + key + ": missing or not a hex-float string");
    }
    return parse_hex_double(obj.at(key).get<std::string>());
}

}  // namespace

std::string hex_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

double parse_hex_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw ConfigError("invalid number \"" + s + "\"");
    return v;
}

std::string plan_to_string(const ControlPlan& plan) {
    ordered_json doc;
    doc["format"] = "memwave-plan/1";
    doc["scheme"] = to_string(plan.scheme);
    doc["T"] = hex_double(plan.T);
    doc["global_bound"] = hex_double(plan.global_bound);
    doc["kernel_fingerprint"] = plan.kernel_fingerprint;
    doc["basis_fingerprint"] = plan.basis_fingerprint;
    doc["data_fingerprint"] = plan.data_fingerprint;
    if (plan.tail_majorant) doc["tail_majorant"] = hex_double(*plan.tail_majorant);
    ordered_json modes = ordered_json::array();
    for (const auto& mc : plan.modal) {
        ordered_json m;
        m["n"] = mc.n;
        m["T"] = hex_double(mc.T);
        m["scheme"] = to_string(plan.scheme);
        m["exponents"] = complex_list(mc.exponents);
        m["scaled_coeffs"] = complex_list(mc.scaled_coeffs);
        m["scaled_coeffs_lo"] = complex_list(mc.scaled_coeffs_lo);
        m["sup_bound"] = hex_double(mc.sup_bound);
        m["majorant"] = hex_double(mc.majorant);
        m["integral"] = hex_double(mc.integral);
        m["moment_residual"] = hex_double(mc.moment_residual);
        modes.push_back(std::move(m));
    }
    doc["modes"] = std::move(modes);
    return doc.dump(1) + "\n";
}

ControlPlan plan_from_string(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("plan: ") + e.what());
    }
    try {
        if (doc.value("format", "") != "memwave-plan/1") throw ConfigError("plan.format: unsupported");
        ControlPlan plan;
        plan.scheme = scheme_from_string(doc.at("scheme").get<std::string>());
        plan.T = field(doc, "T");
        plan.global_bound = field(doc, "global_bound");
        plan.kernel_fingerprint = doc.at("kernel_fingerprint").get<std::string>();
        plan.basis_fingerprint = doc.at("basis_fingerprint").get<std::string>();
        plan.data_fingerprint = doc.at("data_fingerprint").get<std::string>();
        if (doc.contains("tail_majorant")) plan.tail_majorant = field(doc, "tail_majorant");
        for (const auto& m : doc.at("modes")) {
            ModalControl mc;
            mc.n = m.at("n").get<int>();
            mc.T = field(m, "T");
            mc.exponents = parse_complex_list(m.at("exponents"), "plan.modes.exponents");
            mc.scaled_coeffs = parse_complex_list(m.at("scaled_coeffs"), "plan.modes.scaled_coeffs");
            if (mc.exponents.size() != mc.scaled_coeffs.size()) {
                throw ConfigError("plan.modes: exponent and coefficient counts differ");
            }
            if (m.contains("scaled_coeffs_lo")) {
                mc.scaled_coeffs_lo = parse_complex_list(m.at("scaled_coeffs_lo"), "plan.modes.scaled_coeffs_lo");
                if (!mc.scaled_coeffs_lo.empty() && mc.scaled_coeffs_lo.size() != mc.scaled_coeffs.size()) {
                    throw ConfigError("plan.modes.scaled_coeffs_lo: count differs from scaled_coeffs");
                }
            }
            mc.sup_bound = field(m, "sup_bound");
            mc.majorant = field(m, "majorant");
            mc.integral = field(m, "integral");
            mc.moment_residual = field(m, "moment_residual");
            plan.modal.push_back(std::move(mc));
        }
        return plan;
    } catch (const ordered_json::exception& e) {
        throw ConfigError(std::string("plan: ") + e.what());
    }
}

void write_plan(const ControlPlan& plan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError(path + ": cannot open for writing");
    out << plan_to_string(plan);
}

ControlPlan read_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return plan_from_string(buf.str());
}

std::string report_to_string(const VerificationReport& report) {
    ordered_json doc;
    doc["T"] = report.T;
    doc["scheme"] = to_string(report.scheme);
    doc["global_bound"] = report.global_bound;
    if (report.field_sampled) doc["sampled_field_max"] = report.sampled_field_max;
    doc["all_pass"] = report.all_pass;
    ordered_json criteria = ordered_json::array();
    for (const auto& c : report.criteria) {
        criteria.push_back({{"name", c.name}, {"worst_ratio", c.worst_ratio}, {"pass", c.pass}});
    }
    doc["criteria"] = std::move(criteria);
    ordered_json modes = ordered_json::array();
    for (const auto& m : report.modes) {
        ordered_json j;
        j["n"] = m.n;
        j["scale"] = m.scale;
        j["terminal_theta"] = m.terminal_theta;
        j["terminal_dtheta"] = m.terminal_dtheta;
        j["terminal_memory"] = m.terminal_memory;
        j["rest_residual"] = m.rest_residual;
        j["predicted_defect"] = m.predicted_defect;
        j["observed_defect"] = m.observed_defect;
        j["moment_residual"] = m.moment_residual;
        j["sup_u"] = m.sup_u;
        j["imag_ratio"] = m.imag_ratio;
        j["drift"] = m.drift;
        modes.push_back(std::move(j));
    }
    doc["modes"] = std::move(modes);
    return doc.dump(1) + "\n";
}

}  // namespace memwave
