#pragma once

namespace shocklab {

// Weight adaptation used on top of the substencil machinery. Linear keeps the
// optimal weights (fixed high-order stencil); Z adapts them through the
// global smoothness ratio; NP3 is the 3rd-order variant with the stronger
// indicator built from the full-stencil curvature (only defined for r = 2).
enum class WenoKind { Linear, Z, NP3 };

// Coefficient tables for one stencil half-width r (order 2r-1), generated at
// startup from exactness conditions. Two flavors exist: reconstruction maps
// cell averages to a face value, interpolation maps point values to a face
// value. Both are left-biased: the window holds q_{i-r+1} .. q_{i+r-1} and
// the value is taken at x_{i+1/2}. Mirror by passing the window reversed.
struct WenoTable {
    int r = 1;
    double c[4][4]{};      // c[j][t]: face-value coefficients of substencil j
    double gamma[4]{};     // optimal weights, substencils ordered left to right
    double B[4][4][4]{};   // beta_j = sum_{t,u} B[j][t][u] q_{j+t} q_{j+u}
    double Bfull[3][3]{};  // full-stencil indicator quadratic form (r = 2 only)
    double cfull[7]{};     // full-stencil face-value coefficients
};

// r in {1, 2, 3, 4}. References stay valid for the program lifetime.
const WenoTable& weno_reconstruct_table(int r);
const WenoTable& weno_interp_table(int r);

// window points at q_{i-r+1}; window[k*stride] is q_{i-r+1+k}. Use a negative
// stride (pointing at q_{i+r}) for the right-biased value at the same face.
double weno_eval(const WenoTable& t, WenoKind kind, const double* window, long stride = 1);

// Value at xq of the degree n-1 polynomial through (x[k], y[k]).
double lagrange_value(const double* x, const double* y, int n, double xq);

} // namespace shocklab
