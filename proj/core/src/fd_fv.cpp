#include "shocklab/fd_fv.hpp"

#include <vector>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

Vec load(const double* p, int nc) {
    Vec v(nc);
    for (int c = 0; c < nc; ++c) v[c] = p[c];
    return v;
}

double dot_row(const EigenSystem& es, int row, const double* p, int nc) {
    double s = 0.0;
    for (int c = 0; c < nc; ++c) s += es.L[row][c] * p[c];
    return s;
}

// One mesh line with ghosts behind both ends of the interior range.
struct Line {
    const double* q0;
    long qs;
    double* r0;
    long rs;
    int n;
    int nc;
};

void line_divergence(const Line& ln, Direction d, double dx, SystemKind sys,
                     const SpatialScheme& sch, const GasModel& gas,
                     double* face_out = nullptr) {
    const int n = ln.n, nc = ln.nc, r = sch.r;
    const int dim = nc == 4 ? 2 : 1;
    const bool lcd = sch.characteristic && nc > 1;
    const WenoTable& tab = weno_reconstruct_table(r);

    std::vector<double> face(static_cast<std::size_t>(n + 1) * nc);
    int err_at = -1;

    try {
        if (sch.finite_volume) {
            for (int k = 0; k <= n; ++k) {
                err_at = k;
                Vec ql(nc), qr(nc);
                if (lcd) {
                    const EigenSystem es =
                        eigensystem(primitive(load(ln.q0 + (k - 1) * ln.qs, nc), gas), gas, d, dim);
                    double wl[7], wr[7], cl[4], cr[4];
                    for (int f = 0; f < nc; ++f) {
                        for (int m = 0; m < 2 * r - 1; ++m) {
                            wl[m] = dot_row(es, f, ln.q0 + (k - r + m) * ln.qs, nc);
                            wr[m] = dot_row(es, f, ln.q0 + (k + r - 1 - m) * ln.qs, nc);
                        }
                        cl[f] = weno_eval(tab, sch.kind, wl);
                        cr[f] = weno_eval(tab, sch.kind, wr);
                    }
                    ql = eig_lift(es, load(cl, nc));
                    qr = eig_lift(es, load(cr, nc));
                } else {
                    for (int c = 0; c < nc; ++c) {
                        ql[c] = weno_eval(tab, sch.kind, ln.q0 + (k - r) * ln.qs + c, ln.qs);
                        qr[c] = weno_eval(tab, sch.kind, ln.q0 + (k + r - 1) * ln.qs + c, -ln.qs);
                    }
                }
                Vec F = system_face_flux(sys, sch.flux, ql, qr, gas, d);
                for (int c = 0; c < nc; ++c) face[static_cast<std::size_t>(k) * nc + c] = F[c];
            }
        } else {
            const bool facesplit =
                sch.split == SplitMode::RoeMatrix || sch.split == SplitMode::Rotated;
            if (facesplit && nc == 1)
                throw ConfigError("matrix-valued splitting needs a full system");

            // point fluxes over the union of all face stencils
            const int lo = -r, npts = n + 2 * r;
            std::vector<double> E(static_cast<std::size_t>(npts) * nc);
            for (int i = lo; i < n + r; ++i) {
                err_at = i;
                Vec q = load(ln.q0 + i * ln.qs, nc);
                Vec f = system_flux(sys, q, gas, d);
                for (int c = 0; c < nc; ++c) E[static_cast<std::size_t>(i - lo) * nc + c] = f[c];
            }

            std::vector<double> Ep, Em;
            if (!facesplit) {
                Ep.resize(E.size());
                Em.resize(E.size());
                SplitSpec ss{sch.split, sch.alpha, nullptr};
                for (int i = lo; i < n + r; ++i) {
                    const std::size_t at = static_cast<std::size_t>(i - lo) * nc;
                    SplitFlux s = split_flux(load(&E[at], nc), load(ln.q0 + i * ln.qs, nc), ss);
                    for (int c = 0; c < nc; ++c) {
                        Ep[at + c] = s.plus[c];
                        Em[at + c] = s.minus[c];
                    }
                }
            }

            const WenoTable& itab = weno_interp_table(r);
            double ep[8][4], em[8][4]; // per-face window split fluxes
            for (int k = 0; k <= n; ++k) {
                err_at = k;
                const double* pp; // plus window start, component 0
                const double* pm; // minus window start (reversed)
                long sp, sm;

                if (facesplit) {
                    Vec ql(nc), qr(nc);
                    for (int c = 0; c < nc; ++c) {
                        ql[c] = weno_eval(itab, sch.kind, ln.q0 + (k - r) * ln.qs + c, ln.qs);
                        qr[c] = weno_eval(itab, sch.kind, ln.q0 + (k + r - 1) * ln.qs + c, -ln.qs);
                    }
                    Direction dd = d;
                    if (sch.split == SplitMode::Rotated)
                        dd = rotated_direction(primitive(ql, gas), primitive(qr, gas), d);
                    const EigenSystem es_face = eigensystem(roe_average(ql, qr, gas), gas, dd);
                    SplitSpec ss{sch.split, sch.alpha, &es_face};
                    for (int m = 0; m < 2 * r; ++m) {
                        const int j = k - r + m;
                        SplitFlux s = split_flux(load(&E[(j - lo) * nc], nc),
                                                 load(ln.q0 + j * ln.qs, nc), ss);
                        for (int c = 0; c < nc; ++c) {
                            ep[m][c] = s.plus[c];
                            em[m][c] = s.minus[c];
                        }
                    }
                    pp = &ep[0][0];
                    sp = 4;
                    pm = &em[2 * r - 1][0];
                    sm = -4;
                } else {
                    pp = &Ep[static_cast<std::size_t>(k - r - lo) * nc];
                    sp = nc;
                    pm = &Em[static_cast<std::size_t>(k + r - 1 - lo) * nc];
                    sm = -nc;
                }

                double* out = &face[static_cast<std::size_t>(k) * nc];
                if (lcd) {
                    const EigenSystem es =
                        eigensystem(primitive(load(ln.q0 + (k - 1) * ln.qs, nc), gas), gas, d, dim);
                    double wp[7], wm[7], hc[4];
                    for (int f = 0; f < nc; ++f) {
                        for (int m = 0; m < 2 * r - 1; ++m) {
                            wp[m] = dot_row(es, f, pp + m * sp, nc);
                            wm[m] = dot_row(es, f, pm + m * sm, nc);
                        }
                        hc[f] = weno_eval(tab, sch.kind, wp) + weno_eval(tab, sch.kind, wm);
                    }
                    Vec F = eig_lift(es, load(hc, nc));
                    for (int c = 0; c < nc; ++c) out[c] = F[c];
                } else {
                    for (int c = 0; c < nc; ++c)
                        out[c] = weno_eval(tab, sch.kind, pp + c, sp) +
                                 weno_eval(tab, sch.kind, pm + c, sm);
                }
            }
        }
    } catch (const NonPhysicalState& e) {
        throw e.with_location(err_at, e.stage());
    }

    if (face_out)
        for (std::size_t k = 0; k < face.size(); ++k) face_out[k] = face[k];

    const double inv = 1.0 / dx;
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < nc; ++c)
            ln.r0[i * ln.rs + c] -=
                (face[static_cast<std::size_t>(i + 1) * nc + c] -
                 face[static_cast<std::size_t>(i) * nc + c]) *
                inv;
}

} // namespace

void flux_divergence_1d(const Field1D& q, const Grid1D& g, SystemKind sys,
                        const SpatialScheme& sch, const GasModel& gas, Field1D& rhs,
                        double* face_out) {
    Line ln{q.cell(0), q.stride(), rhs.cell(0), rhs.stride(), g.n, q.ncomp};
    line_divergence(ln, axis_x(), g.dx, sys, sch, gas, face_out);
}

void flux_divergence_2d(const Field2D& q, const Grid2D& g, SystemKind sys,
                        const SpatialScheme& sch, const GasModel& gas, Field2D& rhs) {
    for (int j = 0; j < g.ny; ++j) {
        Line ln{q.cell(0, j), q.xstride(), rhs.cell(0, j), rhs.xstride(), g.nx, q.ncomp};
        try {
            line_divergence(ln, axis_x(), g.dx, sys, sch, gas);
        } catch (const NonPhysicalState& e) {
            throw e.with_location(j * g.nx + std::max(e.cell(), 0), e.stage());
        }
    }
    for (int i = 0; i < g.nx; ++i) {
        Line ln{q.cell(i, 0), q.ystride(), rhs.cell(i, 0), rhs.ystride(), g.ny, q.ncomp};
        try {
            line_divergence(ln, axis_y(), g.dy, sys, sch, gas);
        } catch (const NonPhysicalState& e) {
            throw e.with_location(std::max(e.cell(), 0) * g.nx + i, e.stage());
        }
    }
}

void central_derivative_span(const double* f, int m, int r, double dx, double* out) {
    const WenoTable& t = weno_reconstruct_table(r);
    std::vector<double> F(static_cast<std::size_t>(m) + 1, 0.0);
    for (int k = r; k <= m - r; ++k) {
        double hp = 0.0, hm = 0.0;
        for (int mm = 0; mm < 2 * r - 1; ++mm) {
            hp += t.cfull[mm] * f[k - r + mm];
            hm += t.cfull[mm] * f[k + r - 1 - mm];
        }
        F[k] = 0.5 * (hp + hm);
    }
    const double inv = 1.0 / dx;
    for (int a = r; a < m - r; ++a) out[a] = (F[a + 1] - F[a]) * inv;
}

void viscous_residual_1d(const Field1D& q, const Grid1D& g, const ViscousModel& vm,
                         const GasModel& gas, int r, Field1D& rhs) {
    const int n = g.n, ng = q.ng;
    const int m = n + 2 * ng;
    std::vector<double> us(m), Ts(m), dus(m, 0.0), dTs(m, 0.0);
    for (int a = 0; a < m; ++a) {
        const double* p = q.data.data() + static_cast<std::size_t>(a) * 3;
        const double rho = p[0];
        if (!(rho > 0.0))
            throw NonPhysicalState("non-physical density in viscous terms", a - ng);
        const double u = p[1] / rho;
        const double pres = (gas.gamma - 1.0) * (p[2] - 0.5 * rho * u * u);
        us[a] = u;
        Ts[a] = pres / rho;
    }
    central_derivative_span(us.data(), m, r, g.dx, dus.data());
    central_derivative_span(Ts.data(), m, r, g.dx, dTs.data());

    std::vector<double> fm(m, 0.0), fe(m, 0.0), dfm(m, 0.0), dfe(m, 0.0);
    for (int a = r; a < m - r; ++a) {
        const double cm = vm.cm(Ts[a]);
        const double ch = vm.ch(Ts[a]);
        fm[a] = cm * dus[a];
        fe[a] = cm * us[a] * dus[a] + ch * dTs[a];
    }
    central_derivative_span(fm.data(), m, r, g.dx, dfm.data());
    central_derivative_span(fe.data(), m, r, g.dx, dfe.data());

    for (int i = 0; i < n; ++i) {
        double* out = rhs.cell(i);
        out[1] += dfm[ng + i];
        out[2] += dfe[ng + i];
    }
}

double max_diffusivity(const Field1D& q, const ViscousModel& vm, const GasModel& gas) {
    double nu = 0.0;
    for (int i = 0; i < q.n; ++i) {
        const PrimitiveState w = primitive(load(q.cell(i), q.ncomp), gas);
        const double Tstar = w.p / w.rho;
        nu = std::max(nu, std::max(vm.cm(Tstar), gas.gamma * vm.ch(Tstar)) / w.rho);
    }
    return nu;
}

double field_max_wavespeed(const Field1D& q, SystemKind sys, const GasModel& gas) {
    double a = 0.0;
    for (int i = 0; i < q.n; ++i) {
        try {
            a = std::max(a, system_wavespeed(sys, load(q.cell(i), q.ncomp), gas));
        } catch (const NonPhysicalState& e) {
            throw e.with_location(i, e.stage());
        }
    }
    return a;
}

double field_max_wavespeed(const Field2D& q, SystemKind sys, const GasModel& gas) {
    double a = 0.0;
    for (int j = 0; j < q.ny; ++j)
        for (int i = 0; i < q.nx; ++i) {
            try {
                a = std::max(a, system_wavespeed(sys, load(q.cell(i, j), q.ncomp), gas));
            } catch (const NonPhysicalState& e) {
                throw e.with_location(j * q.nx + i, e.stage());
            }
        }
    return a;
}

} // namespace shocklab
