#pragma once

#include <stdexcept>
#include <string>

namespace zzgril {

// Bad arguments: out-of-range parameters, mismatched shapes, unusable specs.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Inputs that violate a combinatorial invariant (non-closed complex, illegal zigzag op).
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed files or unreadable datasets.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace zzgril
