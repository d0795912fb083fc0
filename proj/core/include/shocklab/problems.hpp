#pragma once

#include <functional>
#include <vector>

#include "shocklab/dg.hpp"
#include "shocklab/euler.hpp"
#include "shocklab/fd_fv.hpp"
#include "shocklab/grid.hpp"
#include "shocklab/overset.hpp"

namespace shocklab {

enum class CaseKind {
    BurgersSource,
    IsentropicVortex,
    MovingShock1D,
    StationaryShock1D,
    Quasi1DNozzle,
    ObliqueShock2D,
    ViscousShock1D,
    OversetNozzle,
};

struct CaseParams {
    double mach = 2.0;
    double shock_speed = 0.0;
    double shock_position = 0.5;
    double domain_length = 1.0;
    double back_pressure = -1.0; // < 0: downstream shock pressure, or derived for the nozzle
    double vortex_x0 = 7.0, vortex_y0 = 0.0;
    double vortex_u0 = 1.0;
    double vortex_strength = 2.0; // reported beta; the field formulas carry the literal 5
    // Moving-shock downstream velocity from the lab-frame mass flux instead of
    // the shock-frame flux. The jump then no longer satisfies the moving-shock
    // relations exactly; the mismatch wave seeds the conservation-error demos.
    bool lab_frame_downstream = false;
};

// Pre/post states of the stationary 45-degree shock along y = x - 1/2. The
// x-velocity is mach upstream; the normal Mach number is mach/sqrt(2).
struct ObliquePair {
    PrimitiveState pre, post;
};
ObliquePair oblique_shock_states(double mach, const GasModel& gas);

// Diverging duct of the quasi-1D cases.
double nozzle_area(double x);
double nozzle_area_slope(double x);

// Back pressure that parks the steady nozzle shock at shock_x: supersonic
// Mach ODE from the inlet, normal-shock jump, subsonic ODE to the exit at
// x = 1. Throws ConfigError when no shock can stand there.
double quasi1d_back_pressure(double mach_in, double shock_x, const GasModel& gas);

// The two 1-D shock states of a case (moving, stationary or viscous).
ShockStatePair case_shock_states(CaseKind kind, const CaseParams& p, const GasModel& gas);

// Outflow pressure the case applies at the right boundary.
double resolved_back_pressure(CaseKind kind, const CaseParams& p, const GasModel& gas);

// Pointwise initial data (Euler kinds). Burgers initial data is scalar.
PrimitiveState initial_primitive(CaseKind kind, const CaseParams& p, const GasModel& gas,
                                 double x, double y = 0.0);
double burgers_initial(double x);
double burgers_steady(double x);
double burgers_source(double x, double u);

bool exact_available(CaseKind kind);
// Closed-form reference state; ConfigError for kinds without one. Burgers
// returns the steady limit in rho.
PrimitiveState exact_primitive(CaseKind kind, const CaseParams& p, const GasModel& gas,
                               double x, double y, double t);

// Field initializers. cell_average integrates the jump cases exactly across
// cut cells; pointwise sampling otherwise.
void init_case(CaseKind kind, const CaseParams& p, const Grid1D& g, const GasModel& gas,
               bool cell_average, Field1D& out);
void init_case(CaseKind kind, const CaseParams& p, const Grid2D& g, const GasModel& gas,
               Field2D& out);
void init_case(CaseKind kind, const CaseParams& p, const Grid1D& g, const GasModel& gas,
               DgField1D& out);
void init_case(CaseKind kind, const CaseParams& p, const Grid2D& g, const GasModel& gas,
               DgField2D& out);

// Quasi-1D geometric source -A'/A [rho u, rho u^2, (rho e_t + p) u]; the
// state-space form is shared by the FD accumulate and the DG projection.
void quasi1d_source_state(double x, const double* q, const GasModel& gas, double* out);
void add_quasi1d_source(const Field1D& q, const Grid1D& g, const GasModel& gas, Field1D& rhs);
void add_burgers_source(const Field1D& q, const Grid1D& g, Field1D& rhs);

// Transport coefficients at scaled temperature T*: dimensional mu, kappa and
// the momentum/heat prefactors of the scaled viscous flux.
struct TransportCoeffs {
    double mu = 0.0;
    double kappa = 0.0;
    double momentum = 0.0;
    double heat = 0.0;
};
TransportCoeffs sutherland_coeffs(double Tstar, const ViscousModel& vm);

// Mesh cascade of the overset nozzle (1 to 3 levels).
std::vector<LevelSpec> overset_nozzle_specs(int nlevels);

// --- boundary fills -------------------------------------------------------
// Point/cell data: width ghost layers on the named side.
void supersonic_inflow_bc(Field1D& q, const PrimitiveState& in, const GasModel& gas, int width);
void back_pressure_outflow_bc(Field1D& q, double p_back, const GasModel& gas, int width);
void burgers_inflow_bc(Field1D& q, double value, int width);
// Right ghosts continue the degree-(2 width - 1) polynomial through the last
// 2 width interior points.
void burgers_extrapolation_bc(Field1D& q, const Grid1D& g, int width);
void periodic_bc_1d(Field1D& q, int width);
void periodic_bc_2d(Field2D& q, int width);
// Left inflow, right extrapolation, top/bottom periodic along the diagonal
// (shift cells in x per cell in y); corners fall back to the exact states.
void oblique_shock_bc(Field2D& q, const Grid2D& g, const ObliquePair& s, const GasModel& gas,
                      int width);

// Element data: one ghost element per side.
void dg_supersonic_inflow_bc(DgField1D& q, const PrimitiveState& in, const GasModel& gas);
void dg_back_pressure_outflow_bc(DgField1D& q, double p_back, const GasModel& gas);
void dg_burgers_bc(DgField1D& q, double left_value, double right_value);
void dg_periodic_bc_1d(DgField1D& q);
void dg_periodic_bc_2d(DgField2D& q);
void dg_oblique_shock_bc(DgField2D& q, const ObliquePair& s, const GasModel& gas);

} // namespace shocklab
