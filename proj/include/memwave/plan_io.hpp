#pragma once

#include "memwave/synthesis.hpp"
#include "memwave/verify.hpp"

#include <iosfwd>
#include <string>

namespace memwave {

/// Plan file: JSON with every floating-point value written as a C99 hex-float
/// string ("%a"), so reading a written plan reproduces it bit for bit.
std::string plan_to_string(const ControlPlan& plan);
ControlPlan plan_from_string(const std::string& text);
void write_plan(const ControlPlan& plan, const std::string& path);
ControlPlan read_plan(const std::string& path);

/// Verification report as JSON with keys in a fixed order.
std::string report_to_string(const VerificationReport& report);

/// Lossless text form of a double, e.g. "0x1.8p+1".
std::string hex_double(double v);
double parse_hex_double(const std::string& s);

}  // namespace memwave
