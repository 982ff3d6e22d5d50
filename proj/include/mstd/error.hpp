#pragma once

#include <stdexcept>
#include <string>

namespace mstd {

/// Invalid model or operation parameter (p outside [0,1], empty set where
/// a nonempty one is required, index pair out of order, ...).
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A value falls outside the universe or index range it must live in.
struct RangeError : std::out_of_range {
    explicit RangeError(const std::string& what) : std::out_of_range(what) {}
};

/// Request exceeds an enumeration capacity limit.
struct CapacityError : std::length_error {
    explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

}  // namespace mstd
