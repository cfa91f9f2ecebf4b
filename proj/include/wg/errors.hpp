#pragma once

#include <stdexcept>
#include <string>

namespace wg {

// Thrown when an estimator cannot produce a meaningful value from its input
// (silent impulse response, pulse never arriving, decay range never reached).
struct measurement_error : std::runtime_error {
    explicit measurement_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by pitch-dependent estimators when no periodicity is detected.
struct unvoiced_error : std::runtime_error {
    explicit unvoiced_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a room/geometry description is inconsistent (source outside the
// room, coincident source and receiver, ...).
struct geometry_error : std::runtime_error {
    explicit geometry_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wg
