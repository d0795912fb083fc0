#include "shocklab/overset.hpp"

#include <algorithm>
#include <cmath>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

// Nearest integer if x is within tol of one, otherwise -1.
int near_integer(double x, double tol) {
    const double r = std::round(x);
    return std::abs(x - r) <= tol ? static_cast<int>(r) : -1;
}

void constant_element(double* coef, int N, int nc, const Vec& v) {
    const int np = N + 1;
    for (int m = 0; m < np; ++m)
        for (int c = 0; c < nc; ++c) coef[m * nc + c] = 0.0;
    const double s = std::sqrt(2.0); // mode 0 is 1/sqrt(2)
    for (int c = 0; c < nc; ++c) coef[c] = v[c] * s;
}

} // namespace

OversetHierarchy build_hierarchy(const std::vector<LevelSpec>& specs) {
    if (specs.empty()) throw ConfigError("overset hierarchy needs at least one level");
    OversetHierarchy h;
    h.levels.reserve(specs.size());
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const LevelSpec& sp = specs[k];
        if (!(sp.b > sp.a) || !(sp.spacing > 0.0))
            throw ConfigError("overset level extent or spacing is not positive");
        const double span = sp.b - sp.a;
        const int ncell = near_integer(span / sp.spacing, 1e-9 * span / sp.spacing + 1e-12);
        if (ncell < 1) throw ConfigError("overset level extent is not a whole number of cells");

        OversetLevel lv;
        lv.grid = Grid1D::over(sp.a, sp.b, ncell);
        if (k == 0) {
            h.levels.push_back(lv);
            continue;
        }

        const Grid1D& pg = h.levels.back().grid;
        const int ratio = near_integer(pg.dx / lv.grid.dx, 1e-9 * pg.dx / lv.grid.dx);
        if (ratio < 2) throw ConfigError("overset patch spacing must divide the parent spacing");
        if (ratio % 2 == 0)
            throw ConfigError("overset refinement ratio must be odd so cell centers coincide");

        const double pa = pg.x0 - 0.5 * pg.dx; // parent left edge
        const int lo = near_integer((sp.a - pa) / pg.dx, 1e-9);
        const int hi = near_integer((sp.b - pa) / pg.dx, 1e-9);
        if (lo < 0 || hi < 0)
            throw ConfigError("overset patch edges must lie on parent cell faces");
        if (lo < 1 || hi > pg.n - 1)
            throw ConfigError("overset patch must lie strictly inside its parent");

        lv.ratio = ratio;
        lv.parent_lo = lo;
        lv.parent_hi = hi - 1;
        lv.coincident0 = (ratio - 1) / 2;
        h.levels.push_back(lv);
    }
    return h;
}

Vec coupled_interface_flux(InterfaceSide side, const Vec& coarse_candidate,
                           const Vec& fine_candidate) {
    return side == InterfaceSide::Left ? fine_candidate : coarse_candidate;
}

void exchange_fringe(const OversetHierarchy& h, std::vector<Field1D*>& fields, int r) {
    const int depth = h.depth();
    if (r < 1 || r > 4) throw ConfigError("fringe interpolation width out of range");

    // Fringe copies ascend from the finest level so repeated coverage settles
    // on the finest data.
    for (int k = depth - 1; k >= 1; --k) {
        const OversetLevel& lv = h.levels[k];
        const Field1D& fine = *fields[k];
        Field1D& par = *fields[k - 1];
        for (int i = lv.parent_lo; i <= lv.parent_hi; ++i) {
            const double* src = fine.cell(lv.coincident0 + lv.ratio * (i - lv.parent_lo));
            double* dst = par.cell(i);
            for (int c = 0; c < fine.ncomp; ++c) dst[c] = src[c];
        }
    }

    // Ghost fills descend so each patch reads a parent that is already complete.
    for (int k = 1; k < depth; ++k) {
        const OversetLevel& lv = h.levels[k];
        Field1D& fine = *fields[k];
        const Field1D& par = *fields[k - 1];
        const Grid1D& pg = h.levels[k - 1].grid;
        const int npts = 2 * r;
        double xs[8], ys[8];
        auto fill = [&](int j) {
            const double y = lv.grid.x(j);
            int base = static_cast<int>(std::floor((y - pg.x0) / pg.dx)) - r + 1;
            base = std::clamp(base, 0, pg.n - npts);
            for (int m = 0; m < npts; ++m) xs[m] = pg.x(base + m);
            double* dst = fine.cell(j);
            for (int c = 0; c < fine.ncomp; ++c) {
                for (int m = 0; m < npts; ++m) ys[m] = par.cell(base + m)[c];
                dst[c] = lagrange_value(xs, ys, npts, y);
            }
        };
        for (int j = -r; j < 0; ++j) fill(j);
        for (int j = fine.n; j < fine.n + r; ++j) fill(j);
    }
}

void overset_flux_divergence(const OversetHierarchy& h, const std::vector<Field1D*>& q,
                             SystemKind sys, const SpatialScheme& sch, const GasModel& gas,
                             std::vector<Field1D*>& rhs) {
    const int depth = h.depth();
    const int nc = q[0]->ncomp;
    std::vector<std::vector<double>> faces(depth);
    for (int k = 0; k < depth; ++k) {
        faces[k].assign((h.levels[k].grid.n + 1) * nc, 0.0);
        flux_divergence_1d(*q[k], h.levels[k].grid, sys, sch, gas, *rhs[k], faces[k].data());
    }

    // Each level computed its own candidate at the two coupling faces; keep
    // one and repair the cell that used the losing candidate.
    Vec cc(nc), fc(nc);
    for (int k = 1; k < depth; ++k) {
        const OversetLevel& lv = h.levels[k];
        const double* pf = faces[k - 1].data();
        const double* ff = faces[k].data();

        const int lface = lv.left_parent_face();
        for (int c = 0; c < nc; ++c) {
            cc[c] = pf[lface * nc + c];
            fc[c] = ff[c];
        }
        Vec owned = coupled_interface_flux(InterfaceSide::Left, cc, fc);
        double* rp = rhs[k - 1]->cell(lv.parent_lo - 1);
        for (int c = 0; c < nc; ++c)
            rp[c] += (cc[c] - owned[c]) / h.levels[k - 1].grid.dx;

        const int rface = lv.right_parent_face();
        const int nf = lv.grid.n;
        for (int c = 0; c < nc; ++c) {
            cc[c] = pf[rface * nc + c];
            fc[c] = ff[nf * nc + c];
        }
        owned = coupled_interface_flux(InterfaceSide::Right, cc, fc);
        double* rf = rhs[k]->cell(nf - 1);
        for (int c = 0; c < nc; ++c) rf[c] += (fc[c] - owned[c]) / lv.grid.dx;
    }
}

Vec dg_overset_bc(const OversetHierarchy& h, const std::vector<DgField1D*>& fields,
                  int level, InterfaceSide side, bool fine_receiver) {
    if (level < 1 || level >= h.depth())
        throw ConfigError("coupling interface index out of range");
    const OversetLevel& lv = h.levels[level];
    const DgField1D& fine = *fields[level];
    const DgField1D& par = *fields[level - 1];

    const DgField1D* donor;
    int elem;
    double r;
    if (fine_receiver) {
        donor = &par;
        if (side == InterfaceSide::Left) {
            elem = lv.parent_lo - 1;
            r = 1.0;
        } else {
            elem = lv.parent_hi + 1;
            r = -1.0;
        }
        if (elem < 0 || elem >= par.ne)
            throw ConfigError("coupling face outside donor coverage");
    } else {
        donor = &fine;
        if (side == InterfaceSide::Left) {
            elem = 0;
            r = -1.0;
        } else {
            elem = fine.ne - 1;
            r = 1.0;
        }
    }
    Vec out(donor->ncomp);
    dg_eval_1d(donor->elem(elem), donor->N, donor->ncomp, r, &out[0]);
    return out;
}

void dg_exchange(const OversetHierarchy& h, std::vector<DgField1D*>& fields) {
    const int depth = h.depth();

    // Covered parent elements become quadrature restrictions of the fine
    // solution, finest level first.
    for (int k = depth - 1; k >= 1; --k) {
        const OversetLevel& lv = h.levels[k];
        const DgField1D& fine = *fields[k];
        DgField1D& par = *fields[k - 1];
        const DgBasis& b = dg_basis(par.N);
        const Grid1D& pg = h.levels[k - 1].grid;
        const Grid1D& fg = lv.grid;
        const int np = par.N + 1;
        const int nc = par.ncomp;
        double val[8];
        for (int i = lv.parent_lo; i <= lv.parent_hi; ++i) {
            double* ce = par.elem(i);
            for (int m = 0; m < np * nc; ++m) ce[m] = 0.0;
            for (int g = 0; g < np; ++g) {
                const double x = pg.x(i) + 0.5 * pg.dx * b.qp[g];
                int je = static_cast<int>(std::floor((x - (fg.x0 - 0.5 * fg.dx)) / fg.dx));
                je = std::clamp(je, 0, fg.n - 1);
                const double rr = 2.0 * (x - fg.x(je)) / fg.dx;
                dg_eval_1d(fine.elem(je), fine.N, nc, rr, val);
                for (int m = 0; m < np; ++m)
                    for (int c = 0; c < nc; ++c)
                        ce[m * nc + c] += b.qw[g] * b.V[g * np + m] * val[c];
            }
        }
    }

    // Donor traces, coarsest level first: fine ghost elements carry the
    // active parent trace, the interface-adjacent parent elements carry the
    // fine edge trace.
    for (int k = 1; k < depth; ++k) {
        const OversetLevel& lv = h.levels[k];
        DgField1D& fine = *fields[k];
        DgField1D& par = *fields[k - 1];

        constant_element(fine.elem(-1), fine.N, fine.ncomp,
                         dg_overset_bc(h, fields, k, InterfaceSide::Left, true));
        constant_element(fine.elem(fine.ne), fine.N, fine.ncomp,
                         dg_overset_bc(h, fields, k, InterfaceSide::Right, true));
        constant_element(par.elem(lv.parent_lo), par.N, par.ncomp,
                         dg_overset_bc(h, fields, k, InterfaceSide::Left, false));
        constant_element(par.elem(lv.parent_hi), par.N, par.ncomp,
                         dg_overset_bc(h, fields, k, InterfaceSide::Right, false));
    }
}

} // namespace shocklab
