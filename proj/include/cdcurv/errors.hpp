#pragma once

#include <stdexcept>
#include <string>

namespace cdcurv {

// Error taxonomy shared by the library and the CLI. The CLI maps each class
// to a fixed exit code: domain 2, definiteness 3, truncation 4, config 5.
class Error : public std::runtime_error {
public:
    Error(const std::string& msg, int exit_code)
        : std::runtime_error(msg), code_(exit_code) {}
    int exit_code() const noexcept { return code_; }

private:
    int code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error(m, 2) {}
};

struct EvaluationError : Error {
    explicit EvaluationError(const std::string& m) : Error(m, 2) {}
};

struct DefinitenessError : Error {
    explicit DefinitenessError(const std::string& m) : Error(m, 3) {}
};

struct FrameError : Error {
    explicit FrameError(const std::string& m) : Error(m, 3) {}
};

struct PositivityError : Error {
    explicit PositivityError(const std::string& m) : Error(m, 3) {}
};

struct TruncationError : Error {
    explicit TruncationError(const std::string& m, int suggested_degree = -1)
        : Error(m, 4), suggested_degree(suggested_degree) {}
    int suggested_degree;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error(m, 5) {}
};

struct CapacityError : Error {
    explicit CapacityError(const std::string& m) : Error(m, 5) {}
};

}  // namespace cdcurv
