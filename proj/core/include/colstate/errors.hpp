#pragma once

#include <stdexcept>
#include <string>

namespace colstate {

// Exit-code contract shared with the CLI: 0 success, 2 bad input,
// 3 fit failure, 4 network failure.
enum class ExitCode : int {
    ok = 0,
    input_error = 2,
    fit_error = 3,
    network_error = 4,
};

class Error : public std::runtime_error {
public:
    Error(std::string msg, ExitCode code)
        : std::runtime_error(std::move(msg)), code_(code) {}
    ExitCode exit_code() const noexcept { return code_; }

private:
    ExitCode code_;
};

class InputError : public Error {
public:
    explicit InputError(std::string msg)
        : Error(std::move(msg), ExitCode::input_error) {}
};

// Parameter or state outside a model's mathematical domain.
class DomainError : public Error {
public:
    explicit DomainError(std::string msg)
        : Error(std::move(msg), ExitCode::input_error) {}
};

class FitError : public Error {
public:
    explicit FitError(std::string msg)
        : Error(std::move(msg), ExitCode::fit_error) {}
};

class NetworkError : public Error {
public:
    explicit NetworkError(std::string msg)
        : Error(std::move(msg), ExitCode::network_error) {}
};

}  // namespace colstate
