#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "shocklab/diagnostics.hpp"
#include "shocklab/errors.hpp"
#include "shocklab/problems.hpp"

using namespace shocklab;

namespace {
GasModel gas;

void fill_const(Field1D& q, const Vec& s) {
    for (int i = -q.ng; i < q.n + q.ng; ++i)
        for (int c = 0; c < q.ncomp; ++c) q.cell(i)[c] = s[c];
}
} // namespace

TEST_CASE("conservation error vanishes on exact shock data and responds linearly") {
    ShockSpec spec{4.0, -0.04, 5.0, 10.0};
    Grid1D g = Grid1D::over(0.0, 10.0, 1000);
    Field1D q(g.n, 3, 3);
    CaseParams p;
    p.mach = 4.0;
    p.shock_speed = -0.04;
    p.shock_position = 5.0;
    p.domain_length = 10.0;
    init_case(CaseKind::MovingShock1D, p, g, gas, false, q);
    CHECK(std::abs(cep(q, g, spec, gas)) < 1e-10);

    const double R = 1.4 * 4.0;
    const double eps = 1e-3;
    const double base = cep(q, g, spec, gas);
    q.cell(42)[1] += eps;
    CHECK(cep(q, g, spec, gas) - base ==
          doctest::Approx(100.0 * eps * g.dx / R).epsilon(1e-9));
    q.cell(707)[1] += eps;
    CHECK(cep(q, g, spec, gas) - base ==
          doctest::Approx(200.0 * eps * g.dx / R).epsilon(1e-9));

    ShockSpec still{2.0, 0.0, 0.5, 1.0};
    Grid1D gs = Grid1D::over(0.0, 1.0, 64);
    Field1D qs(gs.n, 3, 3);
    ShockStatePair states = moving_shock_states(still, gas);
    fill_const(qs, conserved(states.upstream, gas));
    CHECK(std::abs(cep(qs, gs, still, gas)) < 1e-12);
}

TEST_CASE("element-mean conservation error matches the point-value one") {
    ShockSpec spec{4.0, -0.04, 5.0, 10.0};
    Grid1D g = Grid1D::over(0.0, 10.0, 200);
    DgField1D q(g.n, 2, 3);
    CaseParams p;
    p.mach = 4.0;
    p.shock_speed = -0.04;
    p.shock_position = 5.0;
    p.domain_length = 10.0;
    init_case(CaseKind::MovingShock1D, p, g, gas, q);
    CHECK(std::abs(cep(q, g, spec, gas)) < 1e-10);

    const double R = 1.4 * 4.0;
    const double delta = 2e-3;
    q.elem(3)[1] += delta;
    CHECK(cep(q, g, spec, gas) ==
          doctest::Approx(100.0 * delta / std::sqrt(2.0) * g.dx / R).epsilon(1e-9));
}

TEST_CASE("steady flux quantities of a conserved state") {
    Vec q = conserved({2.0, 3.0, 0.0, 5.0}, gas);
    CHECK(flux_quantity(FluxQuantity::MassFlux, &q[0], gas) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(flux_quantity(FluxQuantity::MomentumFlux, &q[0], gas) ==
          doctest::Approx(23.0).epsilon(1e-13));
    // e_t = p/(rho(g-1)) + u^2/2 = 10.75, flux (rho e_t + p) u = 79.5
    CHECK(flux_quantity(FluxQuantity::EnergyFlux, &q[0], gas) ==
          doctest::Approx(79.5).epsilon(1e-13));
}

TEST_CASE("percentage-error profiles are exact zeros on steady shock data") {
    CaseParams p = [] {
        CaseParams c;
        c.mach = 2.0;
        return c;
    }();
    Grid1D g = Grid1D::over(0.0, 1.0, 100);
    Field1D q(g.n, 3, 3);
    init_case(CaseKind::StationaryShock1D, p, g, gas, false, q);
    const double mref = 1.4 * 2.0;
    const double momref = 1.4 * 4.0 + 1.0;
    const double eref = (1.0 / 0.4 + 0.5 * 1.4 * 4.0 + 1.0) * 2.0;
    CHECK(max_value(pe_profile(q, g, FluxQuantity::MassFlux, mref, gas)) < 1e-10);
    CHECK(max_value(pe_profile(q, g, FluxQuantity::MomentumFlux, momref, gas)) < 1e-10);
    CHECK(max_value(pe_profile(q, g, FluxQuantity::EnergyFlux, eref, gas)) < 1e-10);

    DgField1D qd(g.n, 3, 3);
    init_case(CaseKind::StationaryShock1D, p, g, gas, qd);
    Series s = pe_profile(qd, g, FluxQuantity::MassFlux, mref, gas);
    CHECK(max_value(s) < 1e-10);
    CHECK(s.size() == 100);
    CHECK(s.x[0] == doctest::Approx(g.x(0)).epsilon(1e-14));

    // uniform offset data gives a uniform profile
    Field1D qc(g.n, 3, 3);
    fill_const(qc, conserved({1.4, 2.1, 0.0, 1.0}, gas));
    Series u = pe_profile(qc, g, FluxQuantity::MassFlux, mref, gas);
    for (int i = 0; i < u.size(); ++i)
        CHECK(u.v[i] == doctest::Approx(std::abs(mref - 1.4 * 2.1) / mref * 100.0).epsilon(1e-12));
}

TEST_CASE("duct-weighted profile measures A rho u") {
    Grid1D g = Grid1D::over(0.0, 1.0, 50);
    Field1D q(g.n, 2, 3);
    const double ref = 1.4 * 3.0;
    for (int i = 0; i < g.n; ++i) {
        q.cell(i)[0] = 1.0;
        q.cell(i)[1] = ref / nozzle_area(g.x(i));
        q.cell(i)[2] = 10.0;
    }
    CHECK(max_value(pe_profile_area(q, g, ref, gas)) < 1e-12);

    for (int i = 0; i < g.n; ++i) q.cell(i)[1] = 2.0;
    Series s = pe_profile_area(q, g, ref, gas);
    for (int i = 0; i < s.size(); ++i)
        CHECK(s.v[i] ==
              doctest::Approx(std::abs(ref - nozzle_area(g.x(i)) * 2.0) / ref * 100.0)
                  .epsilon(1e-12));
}

TEST_CASE("diagonal-line sampler reads the normal mass flux bilinearly") {
    Grid2D g = Grid2D::over(0.0, 2.0, 40, 0.0, 1.0, 20);
    Field2D q(g.nx, g.ny, 2, 4);
    auto fill = [&](auto fn) {
        for (int j = -1; j <= g.ny; ++j)
            for (int i = -1; i <= g.nx; ++i) {
                double* c = q.cell(i, j);
                fn(g.x(i), g.y(j), c);
            }
    };
    const double s2 = std::sqrt(2.0);
    fill([&](double x, double y, double* c) {
        c[0] = 2.0;
        c[1] = 3.0 + x + 2.0 * y;
        c[2] = 3.0 - s2 * 2.8 + x + 2.0 * y; // difference is constant sqrt(2)*2.8
        c[3] = 20.0;
    });
    Series s = pe_profile_xi(q, g, 2.8, gas);
    CHECK(s.size() == 200);
    CHECK(s.x[0] == 0.0);
    CHECK(s.x[199] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_value(s) < 1e-10);

    fill([&](double x, double y, double* c) {
        c[1] = s2 * (x + y);
        c[2] = 0.0;
    });
    Series t = pe_profile_xi(q, g, 2.8, gas);
    // along the line x + y = 0.5 + 2 xi
    for (int k : {0, 57, 199}) {
        const double xi = k / 199.0;
        CHECK(t.v[k] ==
              doctest::Approx(std::abs(2.8 - (0.5 + 2.0 * xi)) / 2.8 * 100.0).epsilon(1e-10));
    }
}

TEST_CASE("diagonal-line sampler evaluates element polynomials") {
    Grid2D g = Grid2D::over(0.0, 2.0, 20, 0.0, 1.0, 10);
    DgField2D q(g.nx, g.ny, 2, 4);
    dg_project_2d(g, 4, [](double x, double y, double* c) {
        c[0] = 2.0;
        c[1] = 4.0 + 0.5 * x - y;
        c[2] = 4.0 - std::sqrt(2.0) * 1.9 + 0.5 * x - y;
        c[3] = 9.0;
    }, q);
    Series s = pe_profile_xi(q, g, 1.9, gas);
    CHECK(s.size() == 200);
    CHECK(max_value(s) < 1e-10);
}

TEST_CASE("mean absolute errors over points, cells and elements") {
    Grid1D g = Grid1D::over(0.0, 1.0, 40);
    Field1D q(g.n, 1, 2);
    auto f = [](double x) { return std::sin(3.0 * x) + 0.2 * x; };
    for (int i = 0; i < g.n; ++i) {
        q.cell(i)[0] = f(g.x(i));
        q.cell(i)[1] = 0.0;
    }
    CHECK(l1_point_error(q, g, 0, f) < 1e-15);
    for (int i = 0; i < g.n; ++i) q.cell(i)[0] = f(g.x(i)) + (i % 2 ? 1e-3 : -1e-3);
    CHECK(l1_point_error(q, g, 0, f) == doctest::Approx(1e-3).epsilon(1e-12));

    // exact means of x^2 stored as cell averages
    Field1D qa(g.n, 1, 1);
    for (int i = 0; i < g.n; ++i) {
        const double a = g.left_face(i), b = g.left_face(i + 1);
        qa.cell(i)[0] = (b * b * b - a * a * a) / (3.0 * (b - a));
    }
    CHECK(l1_mean_error(qa, g, 0, [](double x) { return x * x; }) < 1e-14);

    DgField1D qd(g.n, 2, 1);
    auto cubic = [](double x) { return 1.0 + x - x * x + 0.3 * x * x * x; };
    dg_project_1d(g, 1, [&](double x, double* c) { c[0] = cubic(x); }, qd);
    CHECK(l1_mean_error(qd, g, 0, cubic) < 1e-13);

    Grid2D g2 = Grid2D::over(0.0, 1.0, 12, 0.0, 2.0, 8);
    DgField2D q2(12, 8, 2, 1);
    auto f2 = [](double x, double y) { return x * x + 0.5 * y - 0.1 * x * y; };
    dg_project_2d(g2, 1, [&](double x, double y, double* c) { c[0] = f2(x, y); }, q2);
    CHECK(l1_mean_error(q2, g2, 0, f2) < 1e-13);

    Field2D qp(12, 8, 0, 1);
    for (int j = 0; j < 8; ++j)
        for (int i = 0; i < 12; ++i) qp.cell(i, j)[0] = f2(g2.x(i), g2.y(j)) + 5e-4;
    CHECK(l1_point_error(qp, g2, 0, f2) == doctest::Approx(5e-4).epsilon(1e-10));
}

TEST_CASE("observed order recovers a manufactured convergence rate") {
    std::vector<std::pair<double, double>> runs;
    for (int n : {20, 40, 80, 160}) {
        Grid1D g = Grid1D::over(0.0, 1.0, n);
        Field1D q(n, 0, 1);
        auto f = [](double x) { return std::cos(2.0 * x); };
        for (int i = 0; i < n; ++i)
            q.cell(i)[0] = f(g.x(i)) + 0.7 * std::pow(g.dx, 3.0) * std::sin(7.0 * g.x(i));
        runs.emplace_back(g.dx, l1_point_error(q, g, 0, f));
    }
    auto rows = l1_error_and_order(runs);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].order == 0.0);
    for (int k = 1; k < 4; ++k) CHECK(rows[k].order == doctest::Approx(3.0).epsilon(0.05 / 3.0));

    auto exact3 = l1_error_and_order({{0.1, 1e-3}, {0.05, 1.25e-4}});
    CHECK(exact3[1].order == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(l1_error_and_order({{0.1, 1e-3}}), ConfigError);
    CHECK_THROWS_AS(l1_error_and_order({{0.05, 1e-3}, {0.1, 1e-4}}), ConfigError);
}

TEST_CASE("report validation guards finiteness and ordering") {
    DiagnosticsReport rep;
    rep.case_id = "check";
    rep.metric = "pe";
    rep.series.x = {0.0, 0.5, 1.0};
    rep.series.v = {1.0, 2.0, 3.0};
    rep.max_pe = 3.0;
    CHECK_NOTHROW(validate(rep));

    DiagnosticsReport bad = rep;
    bad.series.x[1] = -0.5;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = rep;
    bad.series.v[2] = std::nan("");
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = rep;
    bad.series.v.pop_back();
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = rep;
    bad.order = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate(bad), ConfigError);
}
