#pragma once

#include <stdexcept>
#include <string>

namespace pfc {

// Thrown when an input, configuration value or operating point violates a
// documented constraint. Maps to process exit code 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Conduction-mode misuse, e.g. instantaneous input voltage at or above the
// boost output, or a CCM cycle requested where the valley current would be
// negative.
struct ModeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flux density swing at or above the material's saturation limit.
struct SaturationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A design target that cannot be met (e.g. inductance above the ungapped
// value).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem-level failure. Maps to process exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum ExitCode {
    kExitOk = 0,
    kExitValidation = 1,
    kExitRuntime = 2,
    kExitIo = 3,
};

} // namespace pfc
