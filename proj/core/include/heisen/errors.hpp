// errors.hpp — Exception types raised by the heisen core

#pragma once

#include <stdexcept>
#include <string>

namespace heisen {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };
struct InvalidDensityMatrix : Error { using Error::Error; };
struct NonHermitianInput : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct IntegratorFailure : Error { using Error::Error; };
struct OrderExceedsKernels : Error { using Error::Error; };
struct NonConvergent : Error { using Error::Error; };

} // namespace heisen
