#pragma once

#include <string>

#include "shocklab/dg.hpp"
#include "shocklab/fd_fv.hpp"

namespace shocklab {

// Decomposition of a method label like "FDLCDZW5-LF", "FVLR1-AUSM" or
// "DGP4-OshO". Whitespace and '^' are ignored, token case is not significant;
// canonical holds the normalized spelling.
struct SchemeConfig {
    enum class Family { FiniteDifference, FiniteVolume, Galerkin };

    Family family = Family::FiniteDifference;
    SpatialScheme scheme; // FD and FV methods
    DgScheme dg;          // DG methods
    std::string canonical;

    bool is_dg() const { return family == Family::Galerkin; }
};

// ConfigError with the offending position on malformed labels.
SchemeConfig parse_method_label(const std::string& label);

} // namespace shocklab
