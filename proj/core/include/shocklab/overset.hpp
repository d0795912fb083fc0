#pragma once

#include <vector>

#include "shocklab/dg.hpp"
#include "shocklab/fd_fv.hpp"
#include "shocklab/grid.hpp"

namespace shocklab {

// One refinement level. Patch edges sit on faces of the parent grid; with an
// odd refinement ratio every parent cell under the patch has a coincident
// fine cell.
struct OversetLevel {
    Grid1D grid;
    int ratio = 1;      // spacing ratio to the parent level
    int parent_lo = 0;  // first parent cell covered by this patch
    int parent_hi = 0;  // last parent cell covered (inclusive)
    int coincident0 = 0; // own cell sharing a center with parent cell parent_lo

    int left_parent_face() const { return parent_lo; }
    int right_parent_face() const { return parent_hi + 1; }
};

struct LevelSpec {
    double a = 0.0, b = 1.0;
    double spacing = 1.0;
};

// Levels ordered coarsest first; level 0 has ratio 1 and no parent indices.
struct OversetHierarchy {
    std::vector<OversetLevel> levels;

    int depth() const { return static_cast<int>(levels.size()); }
};

OversetHierarchy build_hierarchy(const std::vector<LevelSpec>& specs);

enum class InterfaceSide { Left, Right };

// The single flux used by both components at a coupling interface: the fine
// candidate on the left interface, the coarse one on the right.
Vec coupled_interface_flux(InterfaceSide side, const Vec& coarse_candidate,
                           const Vec& fine_candidate);

// Point-data exchange: parent cells under each patch are overwritten from the
// coincident fine cells, then fine ghost cells (r deep) are filled by
// degree-(2r-1) interpolation from the 2r nearest parent cells. Fields must
// carry at least r ghost layers.
void exchange_fringe(const OversetHierarchy& h, std::vector<Field1D*>& fields, int r);

// Compute every level's convective residual with the interface fluxes made
// unique, accumulating into rhs (not zeroed). Ghosts and fringes of q must be
// current.
void overset_flux_divergence(const OversetHierarchy& h, const std::vector<Field1D*>& q,
                             SystemKind sys, const SpatialScheme& sch, const GasModel& gas,
                             std::vector<Field1D*>& rhs);

// Exterior trace a component applies at a coupling interface: the other
// component's solution evaluated at the face coordinate.
Vec dg_overset_bc(const OversetHierarchy& h, const std::vector<DgField1D*>& fields,
                  int level, InterfaceSide side, bool fine_receiver);

// Element-data exchange: parent elements under each patch are replaced by a
// quadrature restriction of the fine solution, fine ghost elements and the
// interface-adjacent parent elements become constant polynomials holding the
// donor trace.
void dg_exchange(const OversetHierarchy& h, std::vector<DgField1D*>& fields);

} // namespace shocklab
