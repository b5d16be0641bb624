#pragma once

#include <stdexcept>
#include <string>

namespace memwave {

/// Failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
    Config,     // bad input, exit 2
    Numerical,  // root finding / solve / horizon search, exit 3
    Usage,      // API misuse (out-of-horizon evaluation, mismatched traces)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define MEMWAVE_DEFINE_ERROR(Name, Kind)                                           \
    class Name : public Error {                                                    \
    public:                                                                        \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {}   \
    }

MEMWAVE_DEFINE_ERROR(ConfigError, Config);
MEMWAVE_DEFINE_ERROR(SmoothnessViolation, Config);
MEMWAVE_DEFINE_ERROR(PoleProximity, Numerical);
MEMWAVE_DEFINE_ERROR(BracketFailure, Numerical);
MEMWAVE_DEFINE_ERROR(DegenerateRoots, Numerical);
MEMWAVE_DEFINE_ERROR(SingularSystem, Numerical);
MEMWAVE_DEFINE_ERROR(HorizonOverflow, Numerical);
MEMWAVE_DEFINE_ERROR(StepSizeInvalid, Usage);
MEMWAVE_DEFINE_ERROR(OutOfHorizon, Usage);
MEMWAVE_DEFINE_ERROR(ParameterMismatch, Usage);
MEMWAVE_DEFINE_ERROR(UnsupportedBasis, Usage);

#undef MEMWAVE_DEFINE_ERROR

}  // namespace memwave
