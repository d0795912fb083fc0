#include "shocklab/reconstruct.hpp"

#include <cassert>
#include <cmath>
#include <cstring>

namespace shocklab {

namespace {

constexpr double kEps = 1e-14;

// Dense solve by Gaussian elimination with partial pivoting; n <= 8.
void solve_inplace(int n, double A[8][8], double* b) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
        if (piv != col) {
            for (int k = 0; k < n; ++k) std::swap(A[col][k], A[piv][k]);
            std::swap(b[col], b[piv]);
        }
        for (int row = col + 1; row < n; ++row) {
            const double f = A[row][col] / A[col][col];
            for (int k = col; k < n; ++k) A[row][k] -= f * A[col][k];
            b[row] -= f * b[col];
        }
    }
    for (int row = n - 1; row >= 0; --row) {
        double s = b[row];
        for (int k = row + 1; k < n; ++k) s -= A[row][k] * b[k];
        b[row] = s / A[row][row];
    }
}

double integral_monomial(int m) {
    // int_{-1/2}^{1/2} x^m dx
    if (m % 2 == 1) return 0.0;
    return std::pow(0.5, m) / (m + 1);
}

double falling_factorial(int k, int l) {
    double f = 1.0;
    for (int i = 0; i < l; ++i) f *= k - i;
    return f;
}

// Inverse of the map from polynomial coefficients to data values on a stencil
// of n cells/points with integer offsets off[0..n-1] relative to cell i.
// reconstruct: data are cell averages over [off-1/2, off+1/2]; else point
// values at x = off. Result: coeffs a of p(x) = sum a_k x^k from data q via
// a_k = sum_m Minv[k][m] q_m.
void data_to_coeffs(int n, const int* off, bool reconstruct, double Minv[8][8]) {
    double M[8][8]{};
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
            const double o = off[m];
            if (reconstruct)
                M[m][k] = (std::pow(o + 0.5, k + 1) - std::pow(o - 0.5, k + 1)) / (k + 1);
            else
                M[m][k] = std::pow(o, k);
        }
    for (int col = 0; col < n; ++col) {
        double A[8][8];
        std::memcpy(A, M, sizeof(A));
        double e[8]{};
        e[col] = 1.0;
        solve_inplace(n, A, e);
        // e now holds column `col` of M^{-1}: coeffs produced by unit data at m=col
        for (int k = 0; k < n; ++k) Minv[k][col] = e[k];
    }
}

// Face-value coefficients: p(1/2) as a linear form in the data.
void face_coeffs(int n, const double Minv[8][8], double* c) {
    for (int m = 0; m < n; ++m) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += std::pow(0.5, k) * Minv[k][m];
        c[m] = s;
    }
}

// Smoothness indicator quadratic form: sum over derivative orders l of
// int_{-1/2}^{1/2} (d^l p / dx^l)^2 dx, as a symmetric matrix on the data.
void indicator_form(int n, const double Minv[8][8], double out[4][4], int nmax) {
    for (int m = 0; m < nmax; ++m)
        for (int u = 0; u < nmax; ++u) out[m][u] = 0.0;
    for (int l = 1; l < n; ++l)
        for (int m = 0; m < n; ++m)
            for (int u = 0; u < n; ++u) {
                double s = 0.0;
                for (int k = l; k < n; ++k)
                    for (int kk = l; kk < n; ++kk)
                        s += Minv[k][m] * Minv[kk][u] * falling_factorial(k, l) *
                             falling_factorial(kk, l) * integral_monomial(k + kk - 2 * l);
                out[m][u] += s;
            }
}

WenoTable build_table(int r, bool reconstruct) {
    WenoTable t;
    t.r = r;
    const int full = 2 * r - 1;

    // substencil j covers offsets j-r+1 .. j, window slots j .. j+r-1
    for (int j = 0; j < r; ++j) {
        int off[4];
        for (int m = 0; m < r; ++m) off[m] = j - r + 1 + m;
        double Minv[8][8];
        data_to_coeffs(r, off, reconstruct, Minv);
        face_coeffs(r, Minv, t.c[j]);
        indicator_form(r, Minv, t.B[j], 4);
    }

    {
        int off[7];
        for (int m = 0; m < full; ++m) off[m] = m - (r - 1);
        double Minv[8][8];
        data_to_coeffs(full, off, reconstruct, Minv);
        face_coeffs(full, Minv, t.cfull);
        if (r == 2) {
            double Bf[4][4];
            indicator_form(full, Minv, Bf, 4);
            for (int m = 0; m < 3; ++m)
                for (int u = 0; u < 3; ++u) t.Bfull[m][u] = Bf[m][u];
        }
    }

    if (r == 1) {
        t.gamma[0] = 1.0;
        return t;
    }

    // optimal weights: gamma combination of padded substencil coefficients
    // reproduces the full-stencil coefficients. Overdetermined but consistent;
    // solved through the normal equations.
    double A[7][4]{};
    for (int j = 0; j < r; ++j)
        for (int m = 0; m < r; ++m) A[j + m][j] = t.c[j][m];
    double N[8][8]{};
    double rhs[8]{};
    for (int a = 0; a < r; ++a) {
        for (int b = 0; b < r; ++b) {
            double s = 0.0;
            for (int m = 0; m < full; ++m) s += A[m][a] * A[m][b];
            N[a][b] = s;
        }
        double s = 0.0;
        for (int m = 0; m < full; ++m) s += A[m][a] * t.cfull[m];
        rhs[a] = s;
    }
    solve_inplace(r, N, rhs);
    for (int j = 0; j < r; ++j) t.gamma[j] = rhs[j];
    return t;
}

const WenoTable* table_set(bool reconstruct) {
    static const WenoTable recon[4] = {build_table(1, true), build_table(2, true),
                                       build_table(3, true), build_table(4, true)};
    static const WenoTable interp[4] = {build_table(1, false), build_table(2, false),
                                        build_table(3, false), build_table(4, false)};
    return reconstruct ? recon : interp;
}

} // namespace

const WenoTable& weno_reconstruct_table(int r) {
    assert(r >= 1 && r <= 4);
    return table_set(true)[r - 1];
}

const WenoTable& weno_interp_table(int r) {
    assert(r >= 1 && r <= 4);
    return table_set(false)[r - 1];
}

double weno_eval(const WenoTable& t, WenoKind kind, const double* w, long stride) {
    const int r = t.r;
    if (r == 1) return w[0];

    if (kind == WenoKind::Linear) {
        double v = 0.0;
        for (int m = 0; m < 2 * r - 1; ++m) v += t.cfull[m] * w[m * stride];
        return v;
    }

    double q[7];
    for (int m = 0; m < 2 * r - 1; ++m) q[m] = w[m * stride];

    double val[4], beta[4];
    for (int j = 0; j < r; ++j) {
        double v = 0.0;
        for (int m = 0; m < r; ++m) v += t.c[j][m] * q[j + m];
        val[j] = v;
        double b = 0.0;
        for (int m = 0; m < r; ++m)
            for (int u = 0; u < r; ++u) b += t.B[j][m][u] * q[j + m] * q[j + u];
        beta[j] = b;
    }

    double tau;
    if (kind == WenoKind::NP3) {
        double bf = 0.0;
        for (int m = 0; m < 3; ++m)
            for (int u = 0; u < 3; ++u) bf += t.Bfull[m][u] * q[m] * q[u];
        tau = std::pow(std::abs(bf - 0.5 * (beta[0] + beta[1])), 1.5);
    } else if (r == 2) {
        tau = std::abs(beta[1] - beta[0]);
    } else if (r == 3) {
        tau = std::abs(beta[0] - beta[2]);
    } else {
        tau = std::abs(beta[0] + 3.0 * beta[1] - 3.0 * beta[2] - beta[3]);
    }

    const int p = r - 1;
    double wsum = 0.0, v = 0.0;
    for (int j = 0; j < r; ++j) {
        double ratio = tau / (beta[j] + kEps);
        double rp = ratio;
        for (int k = 1; k < p; ++k) rp *= ratio;
        const double wj = t.gamma[j] * (1.0 + rp);
        wsum += wj;
        v += wj * val[j];
    }
    return v / wsum;
}

double lagrange_value(const double* x, const double* y, int n, double xq) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        double l = 1.0;
        for (int m = 0; m < n; ++m)
            if (m != k) l *= (xq - x[m]) / (x[k] - x[m]);
        s += y[k] * l;
    }
    return s;
}

} // namespace shocklab
