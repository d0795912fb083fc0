#include "shocklab/dg.hpp"

#include <array>
#include <cmath>

#include "shocklab/errors.hpp"
#include "shocklab/euler.hpp"
#include "shocklab/flux.hpp"

namespace shocklab {

namespace {

constexpr int kMaxN = 7;
constexpr int kMaxP = kMaxN + 1;
constexpr double kLimEps = 1e-6;

// P_0..P_n and derivatives up to order maxd at r, d[l * (n + 1) + k].
void legendre_derivs(int n, int maxd, double r, double* d) {
    const int w = n + 1;
    for (int l = 0; l <= maxd; ++l)
        for (int k = 0; k <= n; ++k) d[l * w + k] = 0.0;
    d[0] = 1.0;
    if (n >= 1) {
        d[1] = r;
        if (maxd >= 1) d[w + 1] = 1.0;
    }
    for (int k = 1; k < n; ++k) {
        for (int l = 0; l <= maxd; ++l) {
            const double pk = d[l * w + k];
            const double pkm = d[l * w + k - 1];
            const double plo = l > 0 ? d[(l - 1) * w + k] : 0.0;
            d[l * w + k + 1] =
                ((2.0 * k + 1.0) * (r * pk + l * plo) - k * pkm) / (k + 1.0);
        }
    }
}

void gauss_legendre(int n, double* x, double* w) {
    for (int i = 0; i < n; ++i) {
        double r = std::cos(M_PI * (4.0 * i + 3.0) / (4.0 * n + 2.0));
        double dp = 1.0;
        for (int it = 0; it < 60; ++it) {
            double p0 = 1.0, p1 = r;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2.0 * k + 1.0) * r * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (r * p1 - p0) / (r * r - 1.0);
            const double step = p1 / dp;
            r -= step;
            if (std::abs(step) < 1e-15) break;
        }
        x[n - 1 - i] = r;
        w[n - 1 - i] = 2.0 / ((1.0 - r * r) * dp * dp);
    }
    if (n == 1) {
        x[0] = 0.0;
        w[0] = 2.0;
    }
}

DgBasis make_basis(int N) {
    DgBasis b;
    b.N = N;
    const int np = N + 1;
    b.qp.resize(np);
    b.qw.resize(np);
    gauss_legendre(np, b.qp.data(), b.qw.data());

    b.V.resize(np * np);
    b.D.resize(np * np);
    b.left.resize(np);
    b.right.resize(np);
    b.gram.assign(static_cast<std::size_t>(np) * np * np, 0.0);

    std::vector<double> d(static_cast<std::size_t>(np) * np);
    std::vector<double> norm(np);
    for (int k = 0; k <= N; ++k) norm[k] = std::sqrt((2.0 * k + 1.0) / 2.0);

    for (int g = 0; g < np; ++g) {
        legendre_derivs(N, N, b.qp[g], d.data());
        for (int k = 0; k <= N; ++k) {
            b.V[g * np + k] = norm[k] * d[k];
            b.D[g * np + k] = norm[k] * (N >= 1 ? d[np + k] : 0.0);
        }
        for (int a = 0; a <= N; ++a)
            for (int i = 0; i <= N; ++i)
                for (int j = 0; j <= N; ++j)
                    b.gram[(static_cast<std::size_t>(a) * np + i) * np + j] +=
                        b.qw[g] * norm[i] * d[a * np + i] * norm[j] * d[a * np + j];
    }
    for (int k = 0; k <= N; ++k) {
        b.right[k] = norm[k];
        b.left[k] = (k % 2 ? -norm[k] : norm[k]);
    }
    b.beta.assign(static_cast<std::size_t>(np) * np, 0.0);
    for (int a = 1; a <= N; ++a) {
        const double scale = std::pow(2.0, 2 * a - 1);
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j <= N; ++j)
                b.beta[i * np + j] +=
                    scale * b.gram[(static_cast<std::size_t>(a) * np + i) * np + j];
    }
    return b;
}

Vec trace_state(const double* coef, const double* phi, int np, int nc) {
    Vec q = Vec::zero(nc);
    for (int k = 0; k < np; ++k)
        for (int c = 0; c < nc; ++c) q[c] += coef[k * nc + c] * phi[k];
    return q;
}

Vec node_state(const double* coef, const DgBasis& b, int g, int nc) {
    const int np = b.N + 1;
    Vec q = Vec::zero(nc);
    for (int k = 0; k < np; ++k)
        for (int c = 0; c < nc; ++c) q[c] += coef[k * nc + c] * b.V[g * np + k];
    return q;
}

// Projection of a neighbor polynomial shifted by `shift` reference units onto
// the local basis: S[k][m] = int P~k(r) P~m(r + shift) dr, exact by the
// (N+1)-point rule.
void shift_matrix(const DgBasis& b, double shift, double* S) {
    const int np = b.N + 1;
    for (int k = 0; k < np * np; ++k) S[k] = 0.0;
    double phi[kMaxP];
    for (int g = 0; g < np; ++g) {
        legendre_basis(b.N, b.qp[g] + shift, phi);
        for (int k = 0; k < np; ++k)
            for (int m = 0; m < np; ++m)
                S[k * np + m] += b.qw[g] * b.V[g * np + k] * phi[m];
    }
}

double advective_speed(SystemKind sys, const Vec& q, double momentum_comp) {
    switch (sys) {
    case SystemKind::LinearAdvection: return 1.0;
    case SystemKind::Burgers: return q[0];
    default: return momentum_comp / q[0];
    }
}

} // namespace

void legendre_basis(int N, double r, double* out) {
    double p0 = 1.0, p1 = r;
    out[0] = std::sqrt(0.5);
    if (N >= 1) out[1] = std::sqrt(1.5) * r;
    for (int k = 1; k < N; ++k) {
        const double p2 = ((2.0 * k + 1.0) * r * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
        out[k + 1] = std::sqrt((2.0 * k + 3.0) / 2.0) * p2;
    }
}

const DgBasis& dg_basis(int N) {
    if (N < 0 || N > kMaxN) throw ConfigError("polynomial degree out of range [0, 7]");
    static const std::array<DgBasis, kMaxP> tables = [] {
        std::array<DgBasis, kMaxP> t;
        for (int n = 0; n <= kMaxN; ++n) t[n] = make_basis(n);
        return t;
    }();
    return tables[N];
}

void dg_eval_1d(const double* coef, int N, int nc, double r, double* out) {
    double phi[kMaxP];
    legendre_basis(N, r, phi);
    for (int c = 0; c < nc; ++c) out[c] = 0.0;
    for (int k = 0; k <= N; ++k)
        for (int c = 0; c < nc; ++c) out[c] += coef[k * nc + c] * phi[k];
}

void dg_eval_2d(const double* coef, int N, int nc, double r, double s, double* out) {
    double phx[kMaxP], phy[kMaxP];
    legendre_basis(N, r, phx);
    legendre_basis(N, s, phy);
    const int np = N + 1;
    for (int c = 0; c < nc; ++c) out[c] = 0.0;
    for (int k = 0; k <= N; ++k)
        for (int l = 0; l <= N; ++l) {
            const double p = phx[k] * phy[l];
            for (int c = 0; c < nc; ++c) out[c] += coef[(k * np + l) * nc + c] * p;
        }
}

void dg_project_1d(const Grid1D& g, int ncomp,
                   const std::function<void(double, double*)>& fn, DgField1D& out) {
    const DgBasis& b = dg_basis(out.N);
    const int np = out.N + 1;
    double fval[8];
    for (int e = 0; e < out.ne; ++e) {
        double* ce = out.elem(e);
        for (int k = 0; k < np * ncomp; ++k) ce[k] = 0.0;
        for (int gq = 0; gq < np; ++gq) {
            fn(g.x(e) + 0.5 * g.dx * b.qp[gq], fval);
            for (int k = 0; k < np; ++k)
                for (int c = 0; c < ncomp; ++c)
                    ce[k * ncomp + c] += b.qw[gq] * b.V[gq * np + k] * fval[c];
        }
    }
}

void dg_project_2d(const Grid2D& g, int ncomp,
                   const std::function<void(double, double, double*)>& fn, DgField2D& out) {
    const DgBasis& b = dg_basis(out.N);
    const int np = out.N + 1;
    double fval[8];
    for (int ey = 0; ey < out.ney; ++ey)
        for (int ex = 0; ex < out.nex; ++ex) {
            double* ce = out.elem(ex, ey);
            for (int k = 0; k < np * np * ncomp; ++k) ce[k] = 0.0;
            for (int gx = 0; gx < np; ++gx)
                for (int gy = 0; gy < np; ++gy) {
                    fn(g.x(ex) + 0.5 * g.dx * b.qp[gx], g.y(ey) + 0.5 * g.dy * b.qp[gy],
                       fval);
                    const double wgt = b.qw[gx] * b.qw[gy];
                    for (int k = 0; k < np; ++k)
                        for (int l = 0; l < np; ++l) {
                            const double p = wgt * b.V[gx * np + k] * b.V[gy * np + l];
                            for (int c = 0; c < ncomp; ++c)
                                ce[(k * np + l) * ncomp + c] += p * fval[c];
                        }
                }
        }
}

double dg_mean_1d(const double* coef, int N, int nc, int c) {
    (void)N;
    (void)nc;
    return coef[c] / std::sqrt(2.0);
}

double dg_mean_2d(const double* coef, int N, int nc, int c) {
    (void)N;
    (void)nc;
    return coef[c] / 2.0;
}

void dg_residual_1d(const DgField1D& q, const Grid1D& g, SystemKind sys, const DgScheme& sch,
                    const GasModel& gas, DgField1D& rhs) {
    const DgBasis& b = dg_basis(q.N);
    const int np = q.N + 1, nc = q.ncomp, ne = q.ne;
    const double inv_h = 2.0 / g.dx;

    std::vector<double> fhat(static_cast<std::size_t>(ne + 1) * nc);
    for (int f = 0; f <= ne; ++f) {
        try {
            const Vec ql = trace_state(q.elem(f - 1), b.right.data(), np, nc);
            const Vec qr = trace_state(q.elem(f), b.left.data(), np, nc);
            const Vec F = system_face_flux(sys, sch.flux, ql, qr, gas, axis_x());
            for (int c = 0; c < nc; ++c) fhat[f * nc + c] = F[c];
        } catch (NonPhysicalState& err) {
            throw err.with_location(std::min(f, ne - 1), -1);
        }
    }

    double Eg[kMaxP][4];
    for (int e = 0; e < ne; ++e) {
        const double* ce = q.elem(e);
        double* re = rhs.elem(e);
        try {
            for (int gq = 0; gq < np; ++gq) {
                const Vec E = system_flux(sys, node_state(ce, b, gq, nc), gas);
                for (int c = 0; c < nc; ++c) Eg[gq][c] = E[c];
            }
        } catch (NonPhysicalState& err) {
            throw err.with_location(e, -1);
        }
        const double* fl = &fhat[e * nc];
        const double* fr = &fhat[(e + 1) * nc];
        for (int i = 0; i < np; ++i)
            for (int c = 0; c < nc; ++c) {
                double vol = 0.0;
                for (int gq = 0; gq < np; ++gq) vol += b.qw[gq] * b.D[gq * np + i] * Eg[gq][c];
                re[i * nc + c] = inv_h * (vol - (b.right[i] * fr[c] - b.left[i] * fl[c]));
            }
    }
}

void dg_residual_2d(const DgField2D& q, const Grid2D& g, SystemKind sys, const DgScheme& sch,
                    const GasModel& gas, DgField2D& rhs) {
    const DgBasis& b = dg_basis(q.N);
    const int np = q.N + 1, nc = q.ncomp, nex = q.nex, ney = q.ney;

    // Face fluxes at the face quadrature points, x faces then y faces.
    std::vector<double> xf(static_cast<std::size_t>(nex + 1) * ney * np * nc);
    std::vector<double> yf(static_cast<std::size_t>(ney + 1) * nex * np * nc);
    double tl[kMaxP][4], tr[kMaxP][4];

    for (int ey = 0; ey < ney; ++ey)
        for (int fx = 0; fx <= nex; ++fx) {
            const double* cl = q.elem(fx - 1, ey);
            const double* cr = q.elem(fx, ey);
            for (int l = 0; l < np; ++l)
                for (int c = 0; c < nc; ++c) {
                    double a = 0.0, d = 0.0;
                    for (int k = 0; k < np; ++k) {
                        a += cl[(k * np + l) * nc + c] * b.right[k];
                        d += cr[(k * np + l) * nc + c] * b.left[k];
                    }
                    tl[l][c] = a;
                    tr[l][c] = d;
                }
            double* out = &xf[(static_cast<std::size_t>(ey) * (nex + 1) + fx) * np * nc];
            for (int gq = 0; gq < np; ++gq) {
                Vec ql = Vec::zero(nc), qr = Vec::zero(nc);
                for (int l = 0; l < np; ++l)
                    for (int c = 0; c < nc; ++c) {
                        ql[c] += tl[l][c] * b.V[gq * np + l];
                        qr[c] += tr[l][c] * b.V[gq * np + l];
                    }
                try {
                    const Vec F = system_face_flux(sys, sch.flux, ql, qr, gas, axis_x());
                    for (int c = 0; c < nc; ++c) out[gq * nc + c] = F[c];
                } catch (NonPhysicalState& err) {
                    throw err.with_location(ey * nex + std::min(fx, nex - 1), -1);
                }
            }
        }

    for (int fy = 0; fy <= ney; ++fy)
        for (int ex = 0; ex < nex; ++ex) {
            const double* cb = q.elem(ex, fy - 1);
            const double* ct = q.elem(ex, fy);
            for (int k = 0; k < np; ++k)
                for (int c = 0; c < nc; ++c) {
                    double a = 0.0, d = 0.0;
                    for (int l = 0; l < np; ++l) {
                        a += cb[(k * np + l) * nc + c] * b.right[l];
                        d += ct[(k * np + l) * nc + c] * b.left[l];
                    }
                    tl[k][c] = a;
                    tr[k][c] = d;
                }
            double* out = &yf[(static_cast<std::size_t>(fy) * nex + ex) * np * nc];
            for (int gq = 0; gq < np; ++gq) {
                Vec qb = Vec::zero(nc), qt = Vec::zero(nc);
                for (int k = 0; k < np; ++k)
                    for (int c = 0; c < nc; ++c) {
                        qb[c] += tl[k][c] * b.V[gq * np + k];
                        qt[c] += tr[k][c] * b.V[gq * np + k];
                    }
                try {
                    const Vec F = system_face_flux(sys, sch.flux, qb, qt, gas, axis_y());
                    for (int c = 0; c < nc; ++c) out[gq * nc + c] = F[c];
                } catch (NonPhysicalState& err) {
                    throw err.with_location(std::min(fy, ney - 1) * nex + ex, -1);
                }
            }
        }

    const double sx = 0.5 * g.dy, sy = 0.5 * g.dx;
    const double scale = 4.0 / (g.dx * g.dy);
    double t1[kMaxP][kMaxP][4], En[kMaxP][kMaxP][4], Gn[kMaxP][kMaxP][4];
    double e1[kMaxP][kMaxP][4], g1[kMaxP][kMaxP][4];

    for (int ey = 0; ey < ney; ++ey)
        for (int ex = 0; ex < nex; ++ex) {
            const double* ce = q.elem(ex, ey);
            double* re = rhs.elem(ex, ey);

            for (int k = 0; k < np; ++k)
                for (int gy = 0; gy < np; ++gy)
                    for (int c = 0; c < nc; ++c) {
                        double a = 0.0;
                        for (int l = 0; l < np; ++l)
                            a += ce[(k * np + l) * nc + c] * b.V[gy * np + l];
                        t1[k][gy][c] = a;
                    }
            try {
                for (int gx = 0; gx < np; ++gx)
                    for (int gy = 0; gy < np; ++gy) {
                        Vec qg = Vec::zero(nc);
                        for (int k = 0; k < np; ++k)
                            for (int c = 0; c < nc; ++c)
                                qg[c] += b.V[gx * np + k] * t1[k][gy][c];
                        const Vec E = system_flux(sys, qg, gas, axis_x());
                        const Vec G = system_flux(sys, qg, gas, axis_y());
                        for (int c = 0; c < nc; ++c) {
                            En[gx][gy][c] = E[c];
                            Gn[gx][gy][c] = G[c];
                        }
                    }
            } catch (NonPhysicalState& err) {
                throw err.with_location(ey * nex + ex, -1);
            }

            for (int gx = 0; gx < np; ++gx)
                for (int j = 0; j < np; ++j)
                    for (int c = 0; c < nc; ++c) {
                        double a = 0.0;
                        for (int gy = 0; gy < np; ++gy)
                            a += b.qw[gy] * En[gx][gy][c] * b.V[gy * np + j];
                        e1[gx][j][c] = a;
                    }
            for (int gy = 0; gy < np; ++gy)
                for (int i = 0; i < np; ++i)
                    for (int c = 0; c < nc; ++c) {
                        double a = 0.0;
                        for (int gx = 0; gx < np; ++gx)
                            a += b.qw[gx] * Gn[gx][gy][c] * b.V[gx * np + i];
                        g1[gy][i][c] = a;
                    }

            const double* fL = &xf[(static_cast<std::size_t>(ey) * (nex + 1) + ex) * np * nc];
            const double* fR =
                &xf[(static_cast<std::size_t>(ey) * (nex + 1) + ex + 1) * np * nc];
            const double* fB = &yf[(static_cast<std::size_t>(ey) * nex + ex) * np * nc];
            const double* fT = &yf[(static_cast<std::size_t>(ey + 1) * nex + ex) * np * nc];

            for (int i = 0; i < np; ++i)
                for (int j = 0; j < np; ++j)
                    for (int c = 0; c < nc; ++c) {
                        double xvol = 0.0, yvol = 0.0;
                        for (int gx = 0; gx < np; ++gx)
                            xvol += b.qw[gx] * b.D[gx * np + i] * e1[gx][j][c];
                        for (int gy = 0; gy < np; ++gy)
                            yvol += b.qw[gy] * b.D[gy * np + j] * g1[gy][i][c];
                        double sl = 0.0, sr = 0.0, sb = 0.0, st = 0.0;
                        for (int gq = 0; gq < np; ++gq) {
                            sl += b.qw[gq] * fL[gq * nc + c] * b.V[gq * np + j];
                            sr += b.qw[gq] * fR[gq * nc + c] * b.V[gq * np + j];
                            sb += b.qw[gq] * fB[gq * nc + c] * b.V[gq * np + i];
                            st += b.qw[gq] * fT[gq * nc + c] * b.V[gq * np + i];
                        }
                        re[(i * np + j) * nc + c] =
                            scale * (sx * (xvol - b.right[i] * sr + b.left[i] * sl) +
                                     sy * (yvol - b.right[j] * st + b.left[j] * sb));
                    }
        }
}

void dg_add_source_1d(const DgField1D& q, const Grid1D& g,
                      const std::function<void(double, const double*, double*)>& src,
                      DgField1D& rhs) {
    const DgBasis& b = dg_basis(q.N);
    const int np = q.N + 1, nc = q.ncomp;
    double qv[8], sv[8];
    for (int e = 0; e < q.ne; ++e) {
        const double* ce = q.elem(e);
        double* re = rhs.elem(e);
        for (int gq = 0; gq < np; ++gq) {
            const Vec qg = node_state(ce, b, gq, nc);
            for (int c = 0; c < nc; ++c) qv[c] = qg[c];
            src(g.x(e) + 0.5 * g.dx * b.qp[gq], qv, sv);
            for (int i = 0; i < np; ++i)
                for (int c = 0; c < nc; ++c)
                    re[i * nc + c] += b.qw[gq] * b.V[gq * np + i] * sv[c];
        }
    }
}

void dg_troubled_cells_1d(const DgField1D& q, const Grid1D& g, SystemKind sys,
                          const GasModel& gas, std::vector<std::uint8_t>& flags) {
    (void)gas;
    const DgBasis& b = dg_basis(q.N);
    const int np = q.N + 1, nc = q.ncomp;
    flags.assign(q.ne, 0);
    const double hpow = std::pow(g.dx, 0.5 * (q.N + 1));

    for (int e = 0; e < q.ne; ++e) {
        const Vec in_l = trace_state(q.elem(e), b.left.data(), np, nc);
        const Vec in_r = trace_state(q.elem(e), b.right.data(), np, nc);
        const Vec out_l = trace_state(q.elem(e - 1), b.right.data(), np, nc);
        const Vec out_r = trace_state(q.elem(e + 1), b.left.data(), np, nc);

        double num = 0.0;
        int nin = 0;
        if (-advective_speed(sys, in_l, in_l[1]) < 0.0) {
            num += in_l[0] - out_l[0];
            ++nin;
        }
        if (advective_speed(sys, in_r, in_r[1]) < 0.0) {
            num += in_r[0] - out_r[0];
            ++nin;
        }
        if (nin == 0) continue;

        double maxq = 0.0;
        for (int gq = 0; gq < np; ++gq)
            maxq = std::max(maxq, std::abs(node_state(q.elem(e), b, gq, nc)[0]));
        const double den = hpow * nin * maxq;
        flags[e] = den > 0.0 ? (std::abs(num) > den) : (std::abs(num) > 0.0);
    }
}

void dg_troubled_cells_2d(const DgField2D& q, const Grid2D& g, SystemKind sys,
                          const GasModel& gas, std::vector<std::uint8_t>& flags) {
    (void)sys;
    (void)gas;
    const DgBasis& b = dg_basis(q.N);
    const int np = q.N + 1, nc = q.ncomp;
    flags.assign(static_cast<std::size_t>(q.nex) * q.ney, 0);
    const double hpow = std::pow(g.dx, 0.5 * (q.N + 1));
    const bool euler = nc > 1;

    // Trace of every component along one face of a tensor element.
    auto face_trace = [&](const double* ce, int axis, int side, double tr[kMaxP][4]) {
        const double* ends = side > 0 ? b.right.data() : b.left.data();
        for (int m = 0; m < np; ++m)
            for (int c = 0; c < nc; ++c) {
                double a = 0.0;
                for (int k = 0; k < np; ++k)
                    a += (axis == 0 ? ce[(k * np + m) * nc + c] : ce[(m * np + k) * nc + c]) *
                         ends[k];
                tr[m][c] = a;
            }
    };

    double tin[kMaxP][4], tout[kMaxP][4];
    for (int ey = 0; ey < q.ney; ++ey)
        for (int ex = 0; ex < q.nex; ++ex) {
            const double* ce = q.elem(ex, ey);
            double num = 0.0;
            int nin = 0;

            // axis, side, neighbor, momentum component for the face normal
            const int faces[4][4] = {
                {0, -1, 0, 1}, {0, +1, 0, 1}, {1, -1, 1, 2}, {1, +1, 1, 2}};
            for (const auto& fc : faces) {
                const int axis = fc[0], side = fc[1], mom = fc[3];
                const double* nb = axis == 0 ? q.elem(ex + side, ey) : q.elem(ex, ey + side);
                face_trace(ce, axis, side, tin);
                face_trace(nb, axis, -side, tout);
                double vn = 0.0, jump = 0.0;
                for (int gq = 0; gq < np; ++gq) {
                    double qi[4] = {0, 0, 0, 0}, qo0 = 0.0;
                    for (int m = 0; m < np; ++m) {
                        const double p = b.V[gq * np + m];
                        for (int c = 0; c < nc; ++c) qi[c] += tin[m][c] * p;
                        qo0 += tout[m][0] * p;
                    }
                    const double u = euler ? qi[mom] / qi[0] : 1.0;
                    vn += b.qw[gq] * side * u;
                    jump += b.qw[gq] * (qi[0] - qo0);
                }
                if (vn / 2.0 < 0.0) {
                    num += jump / 2.0;
                    ++nin;
                }
            }
            if (nin == 0) continue;

            double maxq = 0.0;
            for (int gx = 0; gx < np; ++gx)
                for (int gy = 0; gy < np; ++gy) {
                    double v = 0.0;
                    for (int k = 0; k < np; ++k)
                        for (int l = 0; l < np; ++l)
                            v += ce[(k * np + l) * nc] * b.V[gx * np + k] * b.V[gy * np + l];
                    maxq = std::max(maxq, std::abs(v));
                }
            const double den = hpow * nin * maxq;
            flags[static_cast<std::size_t>(ey) * q.nex + ex] =
                den > 0.0 ? (std::abs(num) > den) : (std::abs(num) > 0.0);
        }
}

namespace {

// Weighted blend of candidate modal vectors, one scalar field at a time.
// cand[a][k], betaq the quadratic form, gam the linear weights.
void blend_1d(const DgBasis& bb, int np, int ncand, const double* gam,
              double cand[][kMaxP], double* out) {
    double w[6], wsum = 0.0;
    for (int a = 0; a < ncand; ++a) {
        double beta = 0.0;
        for (int i = 1; i < np; ++i)
            for (int j = 1; j < np; ++j) beta += cand[a][i] * bb.beta[i * np + j] * cand[a][j];
        w[a] = gam[a] / ((beta + kLimEps) * (beta + kLimEps));
        wsum += w[a];
    }
    for (int k = 0; k < np; ++k) {
        double v = 0.0;
        for (int a = 0; a < ncand; ++a) v += w[a] / wsum * cand[a][k];
        out[k] = v;
    }
}

double beta_2d(const DgBasis& bb, int N, const double* c) {
    const int np = N + 1;
    double beta = 0.0;
    double t[kMaxP][kMaxP], u[kMaxP][kMaxP];
    for (int ax = 0; ax <= N; ++ax)
        for (int ay = ax == 0 ? 1 : 0; ax + ay <= N; ++ay) {
            const double* gx = &bb.gram[static_cast<std::size_t>(ax) * np * np];
            const double* gy = &bb.gram[static_cast<std::size_t>(ay) * np * np];
            for (int m = 0; m < np; ++m)
                for (int l = 0; l < np; ++l) {
                    double a = 0.0;
                    for (int k = 0; k < np; ++k) a += gx[m * np + k] * c[k * np + l];
                    t[m][l] = a;
                }
            for (int m = 0; m < np; ++m)
                for (int n = 0; n < np; ++n) {
                    double a = 0.0;
                    for (int l = 0; l < np; ++l) a += t[m][l] * gy[l * np + n];
                    u[m][n] = a;
                }
            double s = 0.0;
            for (int m = 0; m < np; ++m)
                for (int n = 0; n < np; ++n) s += u[m][n] * c[m * np + n];
            beta += std::pow(4.0, ax + ay - 1) * s;
        }
    return beta;
}

void blend_2d(const DgBasis& bb, int N, int ncand, const double* gam,
              double cand[][kMaxP * kMaxP], double* out) {
    const int np = N + 1;
    double w[6], wsum = 0.0;
    for (int a = 0; a < ncand; ++a) {
        const double beta = beta_2d(bb, N, cand[a]);
        w[a] = gam[a] / ((beta + kLimEps) * (beta + kLimEps));
        wsum += w[a];
    }
    for (int k = 0; k < np * np; ++k) {
        double v = 0.0;
        for (int a = 0; a < ncand; ++a) v += w[a] / wsum * cand[a][k];
        out[k] = v;
    }
}

} // namespace

void dg_limit_1d(DgField1D& q, const Grid1D& g, SystemKind sys, const GasModel& gas,
                 bool characteristic, bool force_all) {
    if (q.N == 0 || q.ne < 3) return;
    std::vector<std::uint8_t> flags;
    dg_troubled_cells_1d(q, g, sys, gas, flags);

    const DgBasis& b = dg_basis(q.N);
    const int np = q.N + 1, nc = q.ncomp;
    static const double gam[3] = {0.998, 0.001, 0.001};

    double Sp[kMaxP * kMaxP], Sm[kMaxP * kMaxP];
    shift_matrix(b, +2.0, Sp);
    shift_matrix(b, -2.0, Sm);

    std::vector<double> orig = q.coef;
    const auto src = [&](int e) { return orig.data() + (e + 1) * q.block(); };

    double cand[3][kMaxP][4];
    double chc[3][kMaxP];
    double outc[kMaxP];

    for (int e = 1; e < q.ne - 1; ++e) {
        if (!force_all && !flags[e]) continue;
        const double* own = src(e);
        const double* nbl = src(e - 1);
        const double* nbr = src(e + 1);
        for (int k = 0; k < np; ++k)
            for (int c = 0; c < nc; ++c) {
                cand[0][k][c] = own[k * nc + c];
                double a = 0.0, d = 0.0;
                for (int m = 0; m < np; ++m) {
                    a += Sp[k * np + m] * nbl[m * nc + c];
                    d += Sm[k * np + m] * nbr[m * nc + c];
                }
                cand[1][k][c] = a;
                cand[2][k][c] = d;
            }
        for (int c = 0; c < nc; ++c) {
            cand[1][0][c] = own[c];
            cand[2][0][c] = own[c];
        }

        double* ce = q.elem(e);
        if (characteristic && nc > 1) {
            Vec qm = Vec::zero(nc);
            for (int c = 0; c < nc; ++c) qm[c] = own[c] / std::sqrt(2.0);
            const EigenSystem es = eigensystem(primitive(qm, gas), gas, axis_x(), 1);
            for (int f = 0; f < nc; ++f) {
                for (int a = 0; a < 3; ++a)
                    for (int k = 0; k < np; ++k) {
                        double v = 0.0;
                        for (int c = 0; c < nc; ++c) v += es.L[f][c] * cand[a][k][c];
                        chc[a][k] = v;
                    }
                blend_1d(b, np, 3, gam, chc, outc);
                for (int k = 0; k < np; ++k)
                    for (int c = 0; c < nc; ++c) {
                        if (f == 0) ce[k * nc + c] = 0.0;
                        ce[k * nc + c] += es.R[c][f] * outc[k];
                    }
            }
        } else {
            for (int c = 0; c < nc; ++c) {
                for (int a = 0; a < 3; ++a)
                    for (int k = 0; k < np; ++k) chc[a][k] = cand[a][k][c];
                blend_1d(b, np, 3, gam, chc, outc);
                for (int k = 0; k < np; ++k) ce[k * nc + c] = outc[k];
            }
        }
    }
}

void dg_limit_2d(DgField2D& q, const Grid2D& g, SystemKind sys, const GasModel& gas,
                 bool characteristic, bool force_all) {
    if (q.N == 0 || q.nex < 3 || q.ney < 3) return;
    std::vector<std::uint8_t> flags;
    dg_troubled_cells_2d(q, g, sys, gas, flags);

    const DgBasis& b = dg_basis(q.N);
    const int np = q.N + 1, nc = q.ncomp, nm = np * np;
    static const double gam[5] = {0.996, 0.001, 0.001, 0.001, 0.001};

    double Sp[kMaxP * kMaxP], Sm[kMaxP * kMaxP];
    shift_matrix(b, +2.0, Sp);
    shift_matrix(b, -2.0, Sm);

    std::vector<double> orig = q.coef;
    const auto src = [&](int ex, int ey) {
        return orig.data() + (static_cast<long>(ey + 1) * (q.nex + 2) + ex + 1) * q.block();
    };

    double cand[5][kMaxP * kMaxP][4];
    double chc[5][kMaxP * kMaxP];
    double outc[kMaxP * kMaxP];

    for (int ey = 1; ey < q.ney - 1; ++ey)
        for (int ex = 1; ex < q.nex - 1; ++ex) {
            if (!force_all && !flags[static_cast<std::size_t>(ey) * q.nex + ex]) continue;
            const double* own = src(ex, ey);
            const double* nb[4] = {src(ex - 1, ey), src(ex + 1, ey), src(ex, ey - 1),
                                   src(ex, ey + 1)};
            const double* shift[4] = {Sp, Sm, Sp, Sm};

            for (int k = 0; k < np; ++k)
                for (int l = 0; l < np; ++l)
                    for (int c = 0; c < nc; ++c) {
                        cand[0][k * np + l][c] = own[(k * np + l) * nc + c];
                        double ax = 0.0, bx = 0.0, ay = 0.0, by = 0.0;
                        for (int m = 0; m < np; ++m) {
                            ax += shift[0][k * np + m] * nb[0][(m * np + l) * nc + c];
                            bx += shift[1][k * np + m] * nb[1][(m * np + l) * nc + c];
                            ay += shift[2][l * np + m] * nb[2][(k * np + m) * nc + c];
                            by += shift[3][l * np + m] * nb[3][(k * np + m) * nc + c];
                        }
                        cand[1][k * np + l][c] = ax;
                        cand[2][k * np + l][c] = bx;
                        cand[3][k * np + l][c] = ay;
                        cand[4][k * np + l][c] = by;
                    }
            for (int a = 1; a < 5; ++a)
                for (int c = 0; c < nc; ++c) cand[a][0][c] = own[c];

            double* ce = q.elem(ex, ey);
            if (characteristic && nc > 1) {
                Vec qm = Vec::zero(nc);
                for (int c = 0; c < nc; ++c) qm[c] = own[c] / 2.0;
                const EigenSystem es = eigensystem(primitive(qm, gas), gas, axis_x(), 2);
                for (int f = 0; f < nc; ++f) {
                    for (int a = 0; a < 5; ++a)
                        for (int k = 0; k < nm; ++k) {
                            double v = 0.0;
                            for (int c = 0; c < nc; ++c) v += es.L[f][c] * cand[a][k][c];
                            chc[a][k] = v;
                        }
                    blend_2d(b, q.N, 5, gam, chc, outc);
                    for (int k = 0; k < nm; ++k)
                        for (int c = 0; c < nc; ++c) {
                            if (f == 0) ce[k * nc + c] = 0.0;
                            ce[k * nc + c] += es.R[c][f] * outc[k];
                        }
                }
            } else {
                for (int c = 0; c < nc; ++c) {
                    for (int a = 0; a < 5; ++a)
                        for (int k = 0; k < nm; ++k) chc[a][k] = cand[a][k][c];
                    blend_2d(b, q.N, 5, gam, chc, outc);
                    for (int k = 0; k < nm; ++k) ce[k * nc + c] = outc[k];
                }
            }
        }
}

void dg_gradient_1d(const DgField1D& q, const Grid1D& g, DgField1D& grad) {
    const DgBasis& b = dg_basis(q.N);
    const int np = q.N + 1, nc = q.ncomp, ne = q.ne;
    const double inv_h = 2.0 / g.dx;

    std::vector<double> qhat(static_cast<std::size_t>(ne + 1) * nc);
    for (int f = 0; f <= ne; ++f) {
        const Vec qf = trace_state(q.elem(f), b.left.data(), np, nc);
        for (int c = 0; c < nc; ++c) qhat[f * nc + c] = qf[c];
    }

    double Qg[kMaxP][4];
    for (int e = 0; e < ne; ++e) {
        const double* ce = q.elem(e);
        double* ue = grad.elem(e);
        for (int gq = 0; gq < np; ++gq) {
            const Vec qg = node_state(ce, b, gq, nc);
            for (int c = 0; c < nc; ++c) Qg[gq][c] = qg[c];
        }
        for (int i = 0; i < np; ++i)
            for (int c = 0; c < nc; ++c) {
                double vol = 0.0;
                for (int gq = 0; gq < np; ++gq) vol += b.qw[gq] * b.D[gq * np + i] * Qg[gq][c];
                ue[i * nc + c] = inv_h * (-vol + b.right[i] * qhat[(e + 1) * nc + c] -
                                          b.left[i] * qhat[e * nc + c]);
            }
    }
    const long blk = grad.block();
    for (long k = 0; k < blk; ++k) {
        grad.coef[k] = 0.0;
        grad.coef[static_cast<std::size_t>(ne + 1) * blk + k] = 0.0;
    }
}

namespace {

Vec viscous_point_flux(const Vec& qv, const Vec& gr, const ViscousModel& vm,
                       const GasModel& gas) {
    const double rho = qv[0];
    if (!(rho > 0.0)) throw NonPhysicalState("non-positive density in viscous flux");
    const double u = qv[1] / rho;
    const double ux = (gr[1] - u * gr[0]) / rho;
    const double p = (gas.gamma - 1.0) * (qv[2] - 0.5 * rho * u * u);
    const double px = (gas.gamma - 1.0) * (gr[2] - u * gr[1] + 0.5 * u * u * gr[0]);
    const double tstar = p / rho;
    const double tx = px / rho - p * gr[0] / (rho * rho);
    Vec f = Vec::zero(3);
    f[1] = vm.cm(tstar) * ux;
    f[2] = vm.cm(tstar) * u * ux + vm.ch(tstar) * tx;
    return f;
}

} // namespace

void dg_viscous_residual_1d(const DgField1D& q, const DgField1D& grad, const Grid1D& g,
                            const ViscousModel& vm, const GasModel& gas, DgField1D& rhs) {
    const DgBasis& b = dg_basis(q.N);
    const int np = q.N + 1, nc = q.ncomp, ne = q.ne;
    const double inv_h = 2.0 / g.dx;

    std::vector<double> evhat(static_cast<std::size_t>(ne + 1) * nc);
    for (int f = 0; f <= ne; ++f) {
        try {
            const Vec qf = trace_state(q.elem(f - 1), b.right.data(), np, nc);
            const Vec uf = trace_state(grad.elem(f - 1), b.right.data(), np, nc);
            const Vec ev = viscous_point_flux(qf, uf, vm, gas);
            for (int c = 0; c < nc; ++c) evhat[f * nc + c] = ev[c];
        } catch (NonPhysicalState& err) {
            throw err.with_location(std::min(f, ne - 1), -1);
        }
    }

    double Evg[kMaxP][4];
    for (int e = 0; e < ne; ++e) {
        const double* ce = q.elem(e);
        const double* ge = grad.elem(e);
        double* re = rhs.elem(e);
        try {
            for (int gq = 0; gq < np; ++gq) {
                const Vec ev = viscous_point_flux(node_state(ce, b, gq, nc),
                                                  node_state(ge, b, gq, nc), vm, gas);
                for (int c = 0; c < nc; ++c) Evg[gq][c] = ev[c];
            }
        } catch (NonPhysicalState& err) {
            throw err.with_location(e, -1);
        }
        for (int i = 0; i < np; ++i)
            for (int c = 0; c < nc; ++c) {
                double vol = 0.0;
                for (int gq = 0; gq < np; ++gq)
                    vol += b.qw[gq] * b.D[gq * np + i] * Evg[gq][c];
                re[i * nc + c] += inv_h * (-vol + b.right[i] * evhat[(e + 1) * nc + c] -
                                           b.left[i] * evhat[e * nc + c]);
            }
    }
}

double dg_max_wavespeed_1d(const DgField1D& q, SystemKind sys, const GasModel& gas) {
    const DgBasis& b = dg_basis(q.N);
    const int np = q.N + 1, nc = q.ncomp;
    double s = 0.0;
    for (int e = 0; e < q.ne; ++e) {
        try {
            for (int gq = 0; gq < np; ++gq)
                s = std::max(s, system_wavespeed(sys, node_state(q.elem(e), b, gq, nc), gas));
            s = std::max(
                s, system_wavespeed(sys, trace_state(q.elem(e), b.left.data(), np, nc), gas));
            s = std::max(
                s, system_wavespeed(sys, trace_state(q.elem(e), b.right.data(), np, nc), gas));
        } catch (NonPhysicalState& err) {
            throw err.with_location(e, -1);
        }
    }
    return s;
}

double dg_max_wavespeed_2d(const DgField2D& q, SystemKind sys, const GasModel& gas) {
    const DgBasis& b = dg_basis(q.N);
    const int np = q.N + 1, nc = q.ncomp;
    double s = 0.0;
    for (int ey = 0; ey < q.ney; ++ey)
        for (int ex = 0; ex < q.nex; ++ex) {
            const double* ce = q.elem(ex, ey);
            try {
                for (int gx = 0; gx < np; ++gx)
                    for (int gy = 0; gy < np; ++gy) {
                        Vec qg = Vec::zero(nc);
                        for (int k = 0; k < np; ++k)
                            for (int l = 0; l < np; ++l) {
                                const double p = b.V[gx * np + k] * b.V[gy * np + l];
                                for (int c = 0; c < nc; ++c)
                                    qg[c] += ce[(k * np + l) * nc + c] * p;
                            }
                        s = std::max(s, system_wavespeed(sys, qg, gas));
                    }
            } catch (NonPhysicalState& err) {
                throw err.with_location(ey * q.nex + ex, -1);
            }
        }
    return s;
}

} // namespace shocklab
