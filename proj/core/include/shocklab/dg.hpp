#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "shocklab/fd_fv.hpp"
#include "shocklab/grid.hpp"
#include "shocklab/system.hpp"

namespace shocklab {

// Orthonormal Legendre basis data on [-1, 1] with the (N+1)-point Gauss rule.
// V, D hold P~k and P~k' at the quadrature nodes (node-major); left/right the
// endpoint traces. beta is the modal smoothness quadratic form used by the
// limiter (mode 0 drops out).
struct DgBasis {
    int N = 0;
    std::vector<double> qp, qw;
    std::vector<double> V, D;        // [g * (N+1) + k]
    std::vector<double> left, right; // [k]
    std::vector<double> beta;        // [i * (N+1) + j]
    std::vector<double> gram;        // [(a * (N+1) + i) * (N+1) + j], derivative order a
};

const DgBasis& dg_basis(int N); // N in [0, 7]

// Evaluate P~0..P~N at r (any real r; ghost projections reach outside [-1,1]).
void legendre_basis(int N, double r, double* out);

// Modal coefficients, one ghost element per side. Block layout: mode-major,
// component fastest.
struct DgField1D {
    int ne = 0, N = 0, ncomp = 1;
    std::vector<double> coef;

    DgField1D() = default;
    DgField1D(int ne_, int N_, int nc)
        : ne(ne_), N(N_), ncomp(nc),
          coef(static_cast<std::size_t>(ne_ + 2) * (N_ + 1) * nc, 0.0) {}

    int np() const { return N + 1; }
    long block() const { return static_cast<long>(N + 1) * ncomp; }
    double* elem(int e) { return coef.data() + (e + 1) * block(); }
    const double* elem(int e) const { return coef.data() + (e + 1) * block(); }
};

// Tensor-product modes kl = k (N+1) + l, k the x mode. One ghost ring.
struct DgField2D {
    int nex = 0, ney = 0, N = 0, ncomp = 1;
    std::vector<double> coef;

    DgField2D() = default;
    DgField2D(int nex_, int ney_, int N_, int nc)
        : nex(nex_), ney(ney_), N(N_), ncomp(nc),
          coef(static_cast<std::size_t>(nex_ + 2) * (ney_ + 2) * (N_ + 1) * (N_ + 1) * nc, 0.0) {}

    int np() const { return (N + 1) * (N + 1); }
    long block() const { return static_cast<long>(np()) * ncomp; }
    double* elem(int ex, int ey) {
        return coef.data() + (static_cast<long>(ey + 1) * (nex + 2) + ex + 1) * block();
    }
    const double* elem(int ex, int ey) const {
        return coef.data() + (static_cast<long>(ey + 1) * (nex + 2) + ex + 1) * block();
    }
};

struct DgScheme {
    int N = 2;
    FluxSpec flux;                // face flux; alpha refreshed per stage
    bool characteristic = false;  // limit in characteristic variables
};

// In-element evaluation. out has ncomp entries.
void dg_eval_1d(const double* coef, int N, int nc, double r, double* out);
void dg_eval_2d(const double* coef, int N, int nc, double r, double s, double* out);

// L2 projection of a pointwise function by the element Gauss rule.
void dg_project_1d(const Grid1D& g, int ncomp,
                   const std::function<void(double, double*)>& fn, DgField1D& out);
void dg_project_2d(const Grid2D& g, int ncomp,
                   const std::function<void(double, double, double*)>& fn, DgField2D& out);

// Element means of one component.
double dg_mean_1d(const double* coef, int N, int nc, int c);
double dg_mean_2d(const double* coef, int N, int nc, int c);

// Semi-discrete residual d(coef)/dt (mass matrix already inverted). Ghost
// elements must be filled; rhs is overwritten.
void dg_residual_1d(const DgField1D& q, const Grid1D& g, SystemKind sys, const DgScheme& sch,
                    const GasModel& gas, DgField1D& rhs);
void dg_residual_2d(const DgField2D& q, const Grid2D& g, SystemKind sys, const DgScheme& sch,
                    const GasModel& gas, DgField2D& rhs);

// Accumulate the projection of a pointwise source S(x, Q) into rhs.
void dg_add_source_1d(const DgField1D& q, const Grid1D& g,
                      const std::function<void(double, const double*, double*)>& src,
                      DgField1D& rhs);

// Shock indicator: per-element flags, 1 = troubled. Uses the density (or the
// scalar itself), inflow faces only, threshold 1.
void dg_troubled_cells_1d(const DgField1D& q, const Grid1D& g, SystemKind sys,
                          const GasModel& gas, std::vector<std::uint8_t>& flags);
void dg_troubled_cells_2d(const DgField2D& q, const Grid2D& g, SystemKind sys,
                          const GasModel& gas, std::vector<std::uint8_t>& flags);

// Weighted-candidate limiter on flagged elements (skips the outermost layer).
// force_all limits every interior element regardless of the indicator.
void dg_limit_1d(DgField1D& q, const Grid1D& g, SystemKind sys, const GasModel& gas,
                 bool characteristic, bool force_all = false);
void dg_limit_2d(DgField2D& q, const Grid2D& g, SystemKind sys, const GasModel& gas,
                 bool characteristic, bool force_all = false);

// Local DG gradient: U = dQ/dx with the downwind (outside) trace for Q.
// Ghost elements of grad are zeroed.
void dg_gradient_1d(const DgField1D& q, const Grid1D& g, DgField1D& grad);

// Accumulate the viscous terms (upwind/inside trace for the viscous flux).
void dg_viscous_residual_1d(const DgField1D& q, const DgField1D& grad, const Grid1D& g,
                            const ViscousModel& vm, const GasModel& gas, DgField1D& rhs);

// Interior max wave speed over all quadrature nodes and traces.
double dg_max_wavespeed_1d(const DgField1D& q, SystemKind sys, const GasModel& gas);
double dg_max_wavespeed_2d(const DgField2D& q, SystemKind sys, const GasModel& gas);

} // namespace shocklab
