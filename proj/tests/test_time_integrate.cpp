#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "shocklab/time_integrate.hpp"

using namespace shocklab;

namespace {

// integrate y' = y^2 from y(0)=1 to t=0.5 (exact value 2) with n steps
double quad_ode_error(TimeScheme scheme, int n) {
    TimeIntegrator ti(scheme);
    std::vector<double> y = {1.0};
    const double dt = 0.5 / n;
    auto rhs = [](const std::vector<double>& q, std::vector<double>& out, int) {
        out[0] = q[0] * q[0];
    };
    for (int i = 0; i < n; ++i) ti.step(y, dt, rhs);
    return std::abs(y[0] - 2.0);
}

double observed_order(TimeScheme scheme, int n) {
    const double e1 = quad_ode_error(scheme, n);
    const double e2 = quad_ode_error(scheme, 2 * n);
    return std::log2(e1 / e2);
}

} // namespace

TEST_CASE("forward Euler single step") {
    TimeIntegrator ti(TimeScheme::ForwardEuler);
    std::vector<double> y = {1.0};
    ti.step(y, 0.1, [](const std::vector<double>& q, std::vector<double>& out, int) {
        out[0] = -q[0];
    });
    CHECK(y[0] == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("third-order scheme has the cubic stability polynomial") {
    TimeIntegrator ti(TimeScheme::Rk3);
    std::vector<double> y = {1.0};
    const double z = -0.2;
    ti.step(y, 1.0, [&](const std::vector<double>& q, std::vector<double>& out, int) {
        out[0] = z * q[0];
    });
    const double expect = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
    CHECK(y[0] == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("fifth-order scheme reproduces the quintic Taylor growth") {
    TimeIntegrator ti(TimeScheme::Rk5);
    std::vector<double> y = {1.0};
    const double z = -0.3;
    ti.step(y, 1.0, [&](const std::vector<double>& q, std::vector<double>& out, int) {
        out[0] = z * q[0];
    });
    double taylor5 = 0.0, f = 1.0;
    for (int k = 0; k <= 5; ++k) {
        taylor5 += f;
        f *= z / (k + 1);
    }
    CHECK(std::abs(y[0] - taylor5) < std::abs(z * z * z) * 1e-3); // z^6-sized residue only
    CHECK(std::abs(y[0] - taylor5) > 0.0);
}

TEST_CASE("measured convergence orders") {
    CHECK(observed_order(TimeScheme::ForwardEuler, 256) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(observed_order(TimeScheme::Rk3, 32) == doctest::Approx(3.0).epsilon(0.05));
    CHECK(observed_order(TimeScheme::Rk5, 8) == doctest::Approx(5.0).epsilon(0.05));
}

TEST_CASE("stage counts, stage indices and post-stage hook") {
    for (auto [scheme, stages] : {std::pair{TimeScheme::ForwardEuler, 1},
                                  std::pair{TimeScheme::Rk3, 3}, std::pair{TimeScheme::Rk5, 6}}) {
        TimeIntegrator ti(scheme);
        CHECK(ti.stages() == stages);

        std::vector<int> seen;
        int post_calls = 0;
        std::vector<double> y = {1.0};
        ti.step(
            y, 0.01,
            [&](const std::vector<double>& q, std::vector<double>& out, int stage) {
                seen.push_back(stage);
                out[0] = -q[0];
            },
            [&](std::vector<double>&, int) { ++post_calls; });
        CHECK(static_cast<int>(seen.size()) == stages);
        for (int s = 0; s < stages; ++s) CHECK(seen[s] == s);
        CHECK(post_calls == stages);
    }
}

TEST_CASE("systems advance componentwise consistently") {
    // harmonic oscillator: energy preserved to scheme order
    TimeIntegrator ti(TimeScheme::Rk5);
    std::vector<double> y = {1.0, 0.0};
    const double dt = 0.05;
    auto rhs = [](const std::vector<double>& q, std::vector<double>& out, int) {
        out[0] = q[1];
        out[1] = -q[0];
    };
    for (int i = 0; i < 200; ++i) ti.step(y, dt, rhs);
    const double t = 200 * dt;
    CHECK(y[0] == doctest::Approx(std::cos(t)).epsilon(1e-8));
    CHECK(y[1] == doctest::Approx(-std::sin(t)).epsilon(1e-8));
}

TEST_CASE("timestep rules") {
    DtSpec fixed{DtRule::FixedCfl, 0.5, 0.0};
    CHECK(cfl_timestep(fixed, 0.01, 3.0) == doctest::Approx(0.5 * 0.01 / 3.0).epsilon(1e-14));

    DtSpec vortex{DtRule::FdVortex, 0.0, 0.0};
    CHECK(cfl_timestep(vortex, 0.02, 99.0) == doctest::Approx(0.0014).epsilon(1e-14));

    DtSpec acc{DtRule::DgAccuracy, 0.0, 0.0};
    CHECK(cfl_timestep(acc, 0.04, 99.0) ==
          doctest::Approx(0.1 * std::pow(0.04, 5.0 / 3.0)).epsilon(1e-14));

    DtSpec dg{DtRule::DgCfl, 0.9, 0.0};
    CHECK(cfl_timestep(dg, 0.01, 3.0, 4) == doctest::Approx(0.9 * 0.01 / 27.0).epsilon(1e-14));

    DtSpec visc{DtRule::FixedCfl, 0.5, 2.0};
    CHECK(cfl_timestep(visc, 0.01, 3.0) == doctest::Approx(0.5 * 1e-4 / 2.0).epsilon(1e-14));
}
