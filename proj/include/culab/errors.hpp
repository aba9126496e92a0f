#pragma once

#include <stdexcept>
#include <string>

namespace culab {

// Bad user input: invalid config values, malformed files, protocol misuse.
// The CLI maps this family to exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A quality gate did not pass (e.g. the pretrained base model). Exit code 3.
struct GateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A loss term diverged or an intermediate went non-finite. Exit code 4.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace culab
