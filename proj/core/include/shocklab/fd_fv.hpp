#pragma once

#include <cmath>

#include "shocklab/flux.hpp"
#include "shocklab/grid.hpp"
#include "shocklab/reconstruct.hpp"
#include "shocklab/system.hpp"

namespace shocklab {

// Spatial discretization of the convective terms. The finite-volume path
// reconstructs cell averages to face states and feeds them to a Riemann flux.
// The conservative finite-difference path splits point fluxes into upwind and
// downwind halves and reconstructs each with its own bias; face states enter
// only through the matrix-valued splittings (RoeMatrix, Rotated), which
// interpolate them to build |A| at the face.
struct SpatialScheme {
    bool finite_volume = false;
    int r = 3;                  // stencil half-width, order 2r-1
    WenoKind kind = WenoKind::Z;
    bool characteristic = false; // project on local characteristic fields
    SplitMode split = SplitMode::LaxFriedrichs;
    FluxSpec flux;               // finite-volume face flux
    double alpha = 0.0;          // global wave speed bound, refreshed per stage
};

// Ghost layers the scheme needs on each side (viscous terms need twice this).
inline int scheme_ghost_width(const SpatialScheme& s) { return s.r; }

// Accumulate -d/dx (convective flux) into rhs over the interior. Ghosts of q
// must be filled; rhs is not zeroed here. face_out, when given, receives the
// (n + 1) * ncomp face fluxes the divergence used.
void flux_divergence_1d(const Field1D& q, const Grid1D& g, SystemKind sys,
                        const SpatialScheme& sch, const GasModel& gas, Field1D& rhs,
                        double* face_out = nullptr);

// Dimension-by-dimension sweeps; accumulates both directions into rhs.
void flux_divergence_2d(const Field2D& q, const Grid2D& g, SystemKind sys,
                        const SpatialScheme& sch, const GasModel& gas, Field2D& rhs);

// High-order central first derivative of contiguous point data f[0..m);
// out[a] = df/dx at a, valid for a in [r, m-r). Other entries untouched.
void central_derivative_span(const double* f, int m, int r, double dx, double* out);

// Sutherland-law transport coefficients in the dimensionless variables the
// shock problems use (temperatures re-dimensionalized through U0^2/R).
struct ViscousModel {
    double rho0 = 1.204;   // kg/m^3
    double U0 = 343.249;   // m/s
    double Rgas = 287.4;   // J/(kg K)
    double L = 1.0;        // domain length, m

    double C1 = 1.458e-6, C2 = 110.4; // viscosity law
    double C3 = 2.495e-3, C4 = 194.0; // conductivity law

    double mu(double T) const { return C1 * std::pow(T, 1.5) / (T + C2); }
    double kappa(double T) const { return C3 * std::pow(T, 1.5) / (T + C4); }
    double temperature(double Tstar) const { return Tstar * U0 * U0 / Rgas; }
    // Stokes hypothesis: lambda + 2 mu = 4 mu / 3
    double cm(double Tstar) const {
        return 4.0 / 3.0 * mu(temperature(Tstar)) / (rho0 * U0 * L);
    }
    double ch(double Tstar) const {
        return kappa(temperature(Tstar)) / (Rgas * rho0 * U0 * L);
    }
};

// Accumulate +d/dx of the viscous flux into rhs. Needs ng >= 2r ghosts.
void viscous_residual_1d(const Field1D& q, const Grid1D& g, const ViscousModel& vm,
                         const GasModel& gas, int r, Field1D& rhs);

// Peak diffusivity over the interior, for the viscous timestep cap.
double max_diffusivity(const Field1D& q, const ViscousModel& vm, const GasModel& gas);

// Interior max of |V| + a (or the scalar wave speed); throws NonPhysicalState
// with the offending cell recorded.
double field_max_wavespeed(const Field1D& q, SystemKind sys, const GasModel& gas);
double field_max_wavespeed(const Field2D& q, SystemKind sys, const GasModel& gas);

} // namespace shocklab
