#pragma once

#include <stdexcept>
#include <string>

namespace shocklab {

// Thrown whenever a state with rho <= 0 or p <= 0 (or a non-finite value)
// shows up in a conversion, an average, or a Riemann path. Carries enough
// location info to report which cell and RK stage went bad.
class NonPhysicalState : public std::runtime_error {
public:
    explicit NonPhysicalState(const std::string& what, int cell = -1, int stage = -1)
        : std::runtime_error(what), cell_(cell), stage_(stage) {}

    int cell() const noexcept { return cell_; }
    int stage() const noexcept { return stage_; }

    NonPhysicalState with_location(int cell, int stage) const {
        return NonPhysicalState(what(), cell, stage);
    }

private:
    int cell_;
    int stage_;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace shocklab
