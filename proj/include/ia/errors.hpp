#pragma once

#include <stdexcept>
#include <string>

namespace ia {

// Malformed configuration or arguments. Maps to CLI exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A solve that should succeed almost surely did not (singular draw).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ia
