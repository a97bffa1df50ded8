#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace liequant {

// Domain error carrying a short machine-readable token ("shape",
// "not_hermitian", ...). The CLI prints the token verbatim on exit code 1.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    explicit Error(std::string code)
        : std::runtime_error(code), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace liequant
