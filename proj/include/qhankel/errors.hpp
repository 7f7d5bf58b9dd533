#pragma once

#include <stdexcept>
#include <string>

namespace qhankel {

// Bad input: violated precondition, malformed flag, unsupported parameter range.
// The CLI maps this to exit code 2.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numeric result whose sign/size cannot be certified at the working
// precision.  Callers are expected to retry at higher precision or abort.
struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariant (e.g. a division that must be exact is not).
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace qhankel
