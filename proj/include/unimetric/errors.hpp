#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace unimetric {

/// Base class for all library failures. `code()` is a short stable tag
/// ("parse", "domain", "scale", "depth", ...) suitable for scripted matching;
/// `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace unimetric
