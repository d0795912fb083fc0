#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "shocklab/errors.hpp"
#include "shocklab/euler.hpp"
#include "shocklab/overset.hpp"

using namespace shocklab;

namespace {

const double kPi = 3.14159265358979323846;

std::vector<LevelSpec> nozzle_specs() {
    return {{0.0, 1.0, 1.0 / 200},
            {0.48, 0.525, 1.0 / 2200},
            {1099.0 / 2200, 1108.0 / 2200, 1.0 / 24200}};
}

void fill_point(Field1D& f, const Grid1D& g, int lo, int hi,
                const std::function<double(double, int)>& fn) {
    for (int i = lo; i < hi; ++i) {
        double* q = f.cell(i);
        for (int c = 0; c < f.ncomp; ++c) q[c] = fn(g.x(i), c);
    }
}

Vec smooth_state(double x, const GasModel& gas) {
    PrimitiveState w;
    w.rho = 1.0 + 0.2 * std::sin(2.0 * kPi * x);
    w.u = 0.3 + 0.1 * std::cos(2.0 * kPi * x);
    w.p = 1.0 + 0.1 * std::sin(4.0 * kPi * x);
    return conserved(w, gas);
}

} // namespace

TEST_CASE("hierarchy geometry matches the three-component nozzle layout") {
    OversetHierarchy h = build_hierarchy(nozzle_specs());
    REQUIRE(h.depth() == 3);

    CHECK(h.levels[0].grid.n == 200);
    CHECK(h.levels[0].ratio == 1);

    const OversetLevel& l1 = h.levels[1];
    CHECK(l1.grid.n == 99);
    CHECK(l1.ratio == 11);
    CHECK(l1.parent_lo == 96);
    CHECK(l1.parent_hi == 104);
    CHECK(l1.coincident0 == 5);
    CHECK(l1.left_parent_face() == 96);
    CHECK(l1.right_parent_face() == 105);

    const OversetLevel& l2 = h.levels[2];
    CHECK(l2.grid.n == 99);
    CHECK(l2.ratio == 11);
    CHECK(l2.parent_lo == 43);
    CHECK(l2.parent_hi == 51);
    CHECK(l2.coincident0 == 5);

    // Center coincidence at both couplings.
    CHECK(std::abs(l1.grid.x(5) - h.levels[0].grid.x(96)) < 1e-14);
    CHECK(std::abs(l1.grid.x(5 + 11 * 4) - h.levels[0].grid.x(100)) < 1e-14);
    CHECK(std::abs(l2.grid.x(5 + 11 * 3) - l1.grid.x(46)) < 1e-14);

    // Patch edges sit on faces of both grids.
    CHECK(std::abs(l1.grid.left_face(0) - h.levels[0].grid.left_face(96)) < 1e-14);
    CHECK(std::abs(l2.grid.left_face(0) - l1.grid.left_face(43)) < 1e-14);
}

TEST_CASE("hierarchy rejects malformed layouts") {
    CHECK_THROWS_AS(build_hierarchy({}), ConfigError);
    // even refinement ratio
    CHECK_THROWS_AS(build_hierarchy({{0.0, 1.0, 1.0 / 200}, {0.48, 0.5, 1.0 / 400}}),
                    ConfigError);
    // spacing does not divide the parent spacing
    CHECK_THROWS_AS(build_hierarchy({{0.0, 1.0, 1.0 / 200}, {0.48, 0.5, 1.0 / 300}}),
                    ConfigError);
    // patch edge off the parent face lattice
    CHECK_THROWS_AS(build_hierarchy({{0.0, 1.0, 1.0 / 200}, {0.4812, 0.5212, 1.0 / 2200}}),
                    ConfigError);
    // flush with the parent boundary on either side
    CHECK_THROWS_AS(build_hierarchy({{0.0, 1.0, 1.0 / 200}, {0.0, 0.5, 1.0 / 600}}),
                    ConfigError);
    CHECK_THROWS_AS(build_hierarchy({{0.0, 1.0, 1.0 / 200}, {0.5, 1.0, 1.0 / 600}}),
                    ConfigError);
}

TEST_CASE("interface flux choice: fine owns the left face, coarse the right") {
    Vec cc(1.0, 2.0, 3.0), fc(4.0, 5.0, 6.0);
    Vec left = coupled_interface_flux(InterfaceSide::Left, cc, fc);
    Vec right = coupled_interface_flux(InterfaceSide::Right, cc, fc);
    for (int c = 0; c < 3; ++c) {
        CHECK(left[c] == fc[c]);
        CHECK(right[c] == cc[c]);
    }
}

TEST_CASE("fringe exchange reproduces degree 2r-1 polynomials exactly") {
    OversetHierarchy h = build_hierarchy({{0.0, 1.0, 1.0 / 20}, {0.4, 0.6, 1.0 / 60}});
    const int r = 3;
    Field1D qc(20, r, 2), qf(h.levels[1].grid.n, r, 2);
    auto poly = [](double x, int c) {
        if (c == 0) return 1.0 + 2.0 * x - x * x * x + 0.5 * std::pow(x, 5);
        return x * x - 3.0 * std::pow(x, 4);
    };
    fill_point(qc, h.levels[0].grid, -r, 20 + r, poly);
    fill_point(qf, h.levels[1].grid, 0, h.levels[1].grid.n, poly);

    std::vector<Field1D*> fields = {&qc, &qf};
    exchange_fringe(h, fields, r);

    for (int j = -r; j < h.levels[1].grid.n + r; ++j)
        for (int c = 0; c < 2; ++c)
            CHECK(qf.cell(j)[c] == doctest::Approx(poly(h.levels[1].grid.x(j), c)).epsilon(1e-12));
    for (int i = 0; i < 20; ++i)
        for (int c = 0; c < 2; ++c)
            CHECK(qc.cell(i)[c] == doctest::Approx(poly(h.levels[0].grid.x(i), c)).epsilon(1e-12));
}

TEST_CASE("constant fields pass through the exchange untouched") {
    OversetHierarchy h = build_hierarchy(nozzle_specs());
    const int r = 4;
    std::vector<Field1D> store;
    store.emplace_back(h.levels[0].grid.n, r, 3);
    store.emplace_back(h.levels[1].grid.n, r, 3);
    store.emplace_back(h.levels[2].grid.n, r, 3);
    std::vector<Field1D*> fields;
    for (auto& f : store) {
        for (double& v : f.data) v = 7.25;
        fields.push_back(&f);
    }
    exchange_fringe(h, fields, r);
    for (auto& f : store)
        for (double v : f.data) CHECK(v == doctest::Approx(7.25).epsilon(1e-14));
}

TEST_CASE("fringe interpolation error decays at order 2r") {
    const int r = 2;
    auto ghost_error = [&](int nc) {
        OversetHierarchy h =
            build_hierarchy({{0.0, 1.0, 1.0 / nc}, {0.4, 0.6, 1.0 / (3 * nc)}});
        Field1D qc(h.levels[0].grid.n, r, 1), qf(h.levels[1].grid.n, r, 1);
        auto fn = [](double x, int) { return std::sin(2.0 * kPi * x); };
        fill_point(qc, h.levels[0].grid, -r, h.levels[0].grid.n + r, fn);
        fill_point(qf, h.levels[1].grid, 0, h.levels[1].grid.n, fn);
        std::vector<Field1D*> fields = {&qc, &qf};
        exchange_fringe(h, fields, r);
        double e = 0.0;
        auto probe = [&](int j) {
            e = std::max(e, std::abs(qf.cell(j)[0] - fn(h.levels[1].grid.x(j), 0)));
        };
        for (int j = -r; j < 0; ++j) probe(j);
        for (int j = qf.n; j < qf.n + r; ++j) probe(j);
        return e;
    };
    const double e1 = ghost_error(60);
    const double e2 = ghost_error(120);
    CHECK(e1 > 1e-12);
    const double order = std::log(e1 / e2) / std::log(2.0);
    CHECK(order > 3.3);
    CHECK(order < 4.7);
}

TEST_CASE("coupled residuals conserve the composite integral") {
    GasModel gas;
    OversetHierarchy h = build_hierarchy({{0.0, 1.0, 1.0 / 20}, {0.4, 0.6, 1.0 / 60}});
    const Grid1D& gc = h.levels[0].grid;
    const Grid1D& gf = h.levels[1].grid;
    const int r = 3, nc = 3;

    Field1D qc(gc.n, r, nc), qf(gf.n, r, nc), rc(gc.n, r, nc), rf(gf.n, r, nc);
    auto fill = [&](Field1D& f, const Grid1D& g, int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            Vec s = smooth_state(g.x(i), gas);
            for (int c = 0; c < nc; ++c) f.cell(i)[c] = s[c];
        }
    };
    fill(qc, gc, 0, gc.n);
    fill(qf, gf, 0, gf.n);
    // periodic outer boundary on the background component
    for (int j = 1; j <= r; ++j)
        for (int c = 0; c < nc; ++c) {
            qc.cell(-j)[c] = qc.cell(gc.n - j)[c];
            qc.cell(gc.n - 1 + j)[c] = qc.cell(j - 1)[c];
        }

    std::vector<Field1D*> q = {&qc, &qf};
    exchange_fringe(h, q, r);

    SpatialScheme sch;
    sch.finite_volume = false;
    sch.r = r;
    sch.kind = WenoKind::Z;
    sch.split = SplitMode::LaxFriedrichs;
    sch.alpha = 3.0;

    std::vector<Field1D*> rhs = {&rc, &rf};
    overset_flux_divergence(h, q, SystemKind::Euler1D, sch, gas, rhs);

    const int lo = h.levels[1].parent_lo, hi = h.levels[1].parent_hi;
    for (int c = 0; c < nc; ++c) {
        double s = 0.0;
        for (int i = 0; i < gc.n; ++i)
            if (i < lo || i > hi) s += rc.cell(i)[c] * gc.dx;
        for (int j = 0; j < gf.n; ++j) s += rf.cell(j)[c] * gf.dx;
        CHECK(std::abs(s) < 1e-12);
    }

    // The same audit without the interface repair does not telescope.
    Field1D uc(gc.n, r, nc), uf(gf.n, r, nc);
    flux_divergence_1d(qc, gc, SystemKind::Euler1D, sch, gas, uc);
    flux_divergence_1d(qf, gf, SystemKind::Euler1D, sch, gas, uf);
    double s0 = 0.0;
    for (int i = 0; i < gc.n; ++i)
        if (i < lo || i > hi) s0 += uc.cell(i)[0] * gc.dx;
    for (int j = 0; j < gf.n; ++j) s0 += uf.cell(j)[0] * gf.dx;
    CHECK(std::abs(s0) > 1e-8);

    // Only the cells straddling an interface were repaired.
    CHECK(rc.cell(lo - 1)[0] != uc.cell(lo - 1)[0]);
    CHECK(rf.cell(gf.n - 1)[0] != uf.cell(gf.n - 1)[0]);
    CHECK(rc.cell(0)[0] == uc.cell(0)[0]);
    CHECK(rf.cell(0)[0] == uf.cell(0)[0]);
}

TEST_CASE("single-level hierarchy degenerates to the plain residual") {
    GasModel gas;
    OversetHierarchy h = build_hierarchy({{0.0, 1.0, 0.1}});
    REQUIRE(h.depth() == 1);
    const Grid1D& g = h.levels[0].grid;
    Field1D q(g.n, 3, 3), rhs(g.n, 3, 3), ref(g.n, 3, 3);
    for (int i = -3; i < g.n + 3; ++i) {
        Vec s = smooth_state(g.x(i) - std::floor(g.x(i)), gas);
        for (int c = 0; c < 3; ++c) q.cell(i)[c] = s[c];
    }
    std::vector<Field1D*> qs = {&q};
    exchange_fringe(h, qs, 3); // no-op
    SpatialScheme sch;
    sch.alpha = 3.0;
    std::vector<Field1D*> rs = {&rhs};
    overset_flux_divergence(h, qs, SystemKind::Euler1D, sch, gas, rs);
    flux_divergence_1d(q, g, SystemKind::Euler1D, sch, gas, ref);
    for (int i = 0; i < g.n; ++i)
        for (int c = 0; c < 3; ++c) CHECK(rhs.cell(i)[c] == ref.cell(i)[c]);
}

TEST_CASE("element interface traces come from the active donor side") {
    OversetHierarchy h = build_hierarchy({{0.0, 1.0, 0.1}, {0.4, 0.6, 0.2 / 6}});
    const int N = 2;
    DgField1D dc(h.levels[0].grid.n, N, 1), df(h.levels[1].grid.n, N, 1);
    auto lin = [](double x, double* out) { out[0] = 2.0 + 3.0 * x; };
    dg_project_1d(h.levels[0].grid, 1, lin, dc);
    dg_project_1d(h.levels[1].grid, 1, lin, df);
    std::vector<DgField1D*> fields = {&dc, &df};

    CHECK(dg_overset_bc(h, fields, 1, InterfaceSide::Left, true)[0] ==
          doctest::Approx(2.0 + 3.0 * 0.4).epsilon(1e-13));
    CHECK(dg_overset_bc(h, fields, 1, InterfaceSide::Right, true)[0] ==
          doctest::Approx(2.0 + 3.0 * 0.6).epsilon(1e-13));
    CHECK(dg_overset_bc(h, fields, 1, InterfaceSide::Left, false)[0] ==
          doctest::Approx(2.0 + 3.0 * 0.4).epsilon(1e-13));
    CHECK(dg_overset_bc(h, fields, 1, InterfaceSide::Right, false)[0] ==
          doctest::Approx(2.0 + 3.0 * 0.6).epsilon(1e-13));

    CHECK_THROWS_AS(dg_overset_bc(h, fields, 0, InterfaceSide::Left, true), ConfigError);
    CHECK_THROWS_AS(dg_overset_bc(h, fields, 2, InterfaceSide::Left, true), ConfigError);
}

TEST_CASE("element exchange restricts interior holes and plants donor traces") {
    OversetHierarchy h = build_hierarchy({{0.0, 1.0, 0.1}, {0.3, 0.7, 0.4 / 12}});
    REQUIRE(h.levels[1].parent_lo == 3);
    REQUIRE(h.levels[1].parent_hi == 6);
    const int N = 3, nc = 3;
    DgField1D dc(h.levels[0].grid.n, N, nc), df(h.levels[1].grid.n, N, nc);
    auto lin = [](double x, double* out) {
        for (int c = 0; c < 3; ++c) out[c] = (c + 1) * (1.0 + 0.5 * x);
    };
    dg_project_1d(h.levels[0].grid, nc, lin, dc);
    dg_project_1d(h.levels[1].grid, nc, lin, df);
    DgField1D ref = dc;

    std::vector<DgField1D*> fields = {&dc, &df};
    dg_exchange(h, fields);

    // Interior holes: restriction of the fine linear field equals the direct
    // projection.
    for (int e = 4; e <= 5; ++e)
        for (int m = 0; m < (N + 1) * nc; ++m)
            CHECK(dc.elem(e)[m] == doctest::Approx(ref.elem(e)[m]).epsilon(1e-12));

    auto check_const = [&](const double* ce, double x) {
        double want[3];
        lin(x, want);
        for (int c = 0; c < nc; ++c) {
            CHECK(ce[c] == doctest::Approx(want[c] * std::sqrt(2.0)).epsilon(1e-12));
            for (int m = 1; m <= N; ++m) CHECK(std::abs(ce[m * nc + c]) < 1e-12);
        }
    };
    check_const(dc.elem(3), 0.3);
    check_const(dc.elem(6), 0.7);
    check_const(df.elem(-1), 0.3);
    check_const(df.elem(df.ne), 0.7);
}

TEST_CASE("element exchange keeps constant fields constant") {
    OversetHierarchy h = build_hierarchy(nozzle_specs());
    const int N = 4, nc = 3;
    std::vector<DgField1D> store;
    std::vector<DgField1D*> fields;
    auto cf = [](double, double* out) {
        out[0] = 1.1;
        out[1] = -0.4;
        out[2] = 2.7;
    };
    for (int k = 0; k < 3; ++k) {
        store.emplace_back(h.levels[k].grid.n, N, nc);
        dg_project_1d(h.levels[k].grid, nc, cf, store.back());
    }
    for (auto& f : store) fields.push_back(&f);
    dg_exchange(h, fields);

    double want[3];
    cf(0.0, want);
    for (int k = 0; k < 3; ++k) {
        const DgField1D& f = store[k];
        // background outer ghosts are not part of the exchange
        const int lo = (k == 0) ? 0 : -1;
        const int hi = (k == 0) ? f.ne - 1 : f.ne;
        for (int e = lo; e <= hi; ++e) {
            for (int c = 0; c < nc; ++c) {
                CHECK(f.elem(e)[c] == doctest::Approx(want[c] * std::sqrt(2.0)).epsilon(1e-13));
                for (int m = 1; m <= N; ++m) CHECK(std::abs(f.elem(e)[m * nc + c]) < 1e-13);
            }
        }
    }
}
