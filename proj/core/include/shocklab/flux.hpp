#pragma once

#include <array>

#include "shocklab/euler.hpp"
#include "shocklab/vec.hpp"

namespace shocklab {

enum class FluxKind {
    Roe,
    RoeHH2, // Roe with the Harten-Hyman quadratic entropy fix on the acoustic fields
    OsherP, // Osher flux, path ordered by increasing wave speed
    OsherO, // Osher flux, original reversed path ordering
    AusmPlusUp,
    GlobalLaxFriedrichs,
    Central,
};

enum class SplitMode {
    LaxFriedrichs, // E +- alpha Q, alpha a global bound on |V| + a
    RoeMatrix,     // E +- |A| Q with |A| at the face Roe average
    Zero,          // E/2 each way; recombines into a central derivative
    LeftBiased,    // E+ = E, E- = 0 (scalar laws with positive wave speed)
    Rotated,       // |A| evaluated in the jump-velocity direction
};

// Tuning constants from Liou's AUSM+-up, exposed through the case config.
struct AusmParams {
    double Kp = 0.25;
    double Ku = 0.75;
    double sigma = 1.0;
    double Minf = 1.0;
};

// Unit direction of the sweep (or of the rotated dissipation).
struct Direction {
    double nx = 1.0;
    double ny = 0.0;
};

inline Direction axis_x() { return {1.0, 0.0}; }
inline Direction axis_y() { return {0.0, 1.0}; }

struct FluxSpec {
    FluxKind kind = FluxKind::Roe;
    double alpha = 0.0;    // current global bound for GlobalLaxFriedrichs
    bool lf_local = false; // use the per-face bound instead of the global one
    AusmParams ausm{};
};

// Wave speeds plus left/right eigenvector matrices of the flux Jacobian in
// direction d. Rows of L are left eigenvectors, columns of R right ones.
struct EigenSystem {
    int n = 3;
    std::array<double, 4> lambda{};
    double L[4][4]{};
    double R[4][4]{};
};

struct RoeAverage {
    double rho = 0.0;
    double u = 0.0;
    double v = 0.0;
    double H = 0.0;
    double a = 0.0;
    int dim = 1;
};

struct SplitFlux {
    Vec plus, minus;
};

Vec physical_flux(const Vec& q, const GasModel& gas, Direction d = axis_x());
Vec physical_flux(const PrimitiveState& w, const GasModel& gas, Direction d, int dim);

double max_wavespeed(const Vec& q, const GasModel& gas);
// ncomp-strided conserved data, npts points; returns max over points of |V| + a.
double global_max_wavespeed(const double* q, long npts, int ncomp, const GasModel& gas);

RoeAverage roe_average(const Vec& ql, const Vec& qr, const GasModel& gas);

EigenSystem eigensystem(const PrimitiveState& w, const GasModel& gas, Direction d, int dim);
EigenSystem eigensystem(const RoeAverage& avg, const GasModel& gas, Direction d);

Vec eig_project(const EigenSystem& es, const Vec& q); // L q
Vec eig_lift(const EigenSystem& es, const Vec& w);    // R w
Vec abs_jacobian_apply(const EigenSystem& es, const Vec& q); // R |Lambda| L q
Vec jacobian_apply(const EigenSystem& es, const Vec& q);     // R Lambda L q

Vec numerical_flux(const FluxSpec& spec, const Vec& ql, const Vec& qr, const GasModel& gas,
                   Direction d = axis_x());

// Dissipation matrix choice for the two matrix-valued splittings: |A| at the
// Roe average of the interpolated face states, in the sweep direction
// (RoeMatrix) or in the rotated direction (Rotated).
struct SplitSpec {
    SplitMode mode = SplitMode::LaxFriedrichs;
    double alpha = 0.0;
    const EigenSystem* abs_eig = nullptr;
};

SplitFlux split_flux(const Vec& E, const Vec& q, const SplitSpec& spec);

// Unit vector (|du|, |dv|) / ||.|| between the face states; falls back to the
// given axis when the velocity jump is below 1e-2.
Direction rotated_direction(const PrimitiveState& wl, const PrimitiveState& wr,
                            Direction fallback = axis_x());

} // namespace shocklab
