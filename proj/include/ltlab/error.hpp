#pragma once

#include <stdexcept>
#include <string>

namespace ltlab {

// Error carrying a machine-readable code. Codes mirror the operation that
// failed (NotDivisible, NotAUnit, WindowTooSmall, ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(detail), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& detail) {
    throw Error(code, detail);
}

}  // namespace ltlab
