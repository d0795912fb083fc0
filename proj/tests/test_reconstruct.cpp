#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "shocklab/reconstruct.hpp"

using namespace shocklab;

namespace {

double beta_of(const WenoTable& t, int j, const double* q) {
    double b = 0.0;
    for (int m = 0; m < t.r; ++m)
        for (int u = 0; u < t.r; ++u) b += t.B[j][m][u] * q[j + m] * q[j + u];
    return b;
}

// exact cell average of x^k over [o-1/2, o+1/2] or point value at o
double monomial_data(int k, int o, bool average) {
    if (!average) return std::pow(o, k);
    return (std::pow(o + 0.5, k + 1) - std::pow(o - 0.5, k + 1)) / (k + 1);
}

void check_exactness(const WenoTable& t, bool average) {
    const int r = t.r;
    for (int k = 0; k <= 2 * r - 2; ++k) {
        double w[7];
        for (int m = 0; m < 2 * r - 1; ++m) w[m] = monomial_data(k, m - (r - 1), average);
        double v = 0.0;
        for (int m = 0; m < 2 * r - 1; ++m) v += t.cfull[m] * w[m];
        CHECK(v == doctest::Approx(std::pow(0.5, k)).epsilon(1e-11).scale(1.0));
    }
    // each substencil is exact to its own degree
    for (int j = 0; j < r; ++j)
        for (int k = 0; k <= r - 1; ++k) {
            double v = 0.0;
            for (int m = 0; m < r; ++m)
                v += t.c[j][m] * monomial_data(k, j - r + 1 + m, average);
            CHECK(v == doctest::Approx(std::pow(0.5, k)).epsilon(1e-12).scale(1.0));
        }
    double gsum = 0.0;
    for (int j = 0; j < r; ++j) gsum += t.gamma[j];
    CHECK(gsum == doctest::Approx(1.0).epsilon(1e-12));
}

} // namespace

TEST_CASE("generated tables are exact on polynomials") {
    for (int r = 1; r <= 4; ++r) {
        check_exactness(weno_reconstruct_table(r), true);
        check_exactness(weno_interp_table(r), false);
    }
}

TEST_CASE("third-order reconstruction coefficients") {
    const WenoTable& t = weno_reconstruct_table(2);
    CHECK(t.c[0][0] == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(t.c[0][1] == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(t.c[1][0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(t.c[1][1] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(t.gamma[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(t.gamma[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(t.cfull[0] == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
    CHECK(t.cfull[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(t.cfull[2] == doctest::Approx(2.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("fifth-order reconstruction coefficients") {
    const WenoTable& t = weno_reconstruct_table(3);
    const double s0[3] = {2.0 / 6.0, -7.0 / 6.0, 11.0 / 6.0};
    const double s1[3] = {-1.0 / 6.0, 5.0 / 6.0, 2.0 / 6.0};
    const double s2[3] = {2.0 / 6.0, 5.0 / 6.0, -1.0 / 6.0};
    for (int m = 0; m < 3; ++m) {
        CHECK(t.c[0][m] == doctest::Approx(s0[m]).epsilon(1e-12));
        CHECK(t.c[1][m] == doctest::Approx(s1[m]).epsilon(1e-12));
        CHECK(t.c[2][m] == doctest::Approx(s2[m]).epsilon(1e-12));
    }
    CHECK(t.gamma[0] == doctest::Approx(0.1).epsilon(1e-11));
    CHECK(t.gamma[1] == doctest::Approx(0.6).epsilon(1e-11));
    CHECK(t.gamma[2] == doctest::Approx(0.3).epsilon(1e-11));
    const double full[5] = {2.0 / 60.0, -13.0 / 60.0, 47.0 / 60.0, 27.0 / 60.0, -3.0 / 60.0};
    for (int m = 0; m < 5; ++m) CHECK(t.cfull[m] == doctest::Approx(full[m]).epsilon(1e-11));
}

TEST_CASE("seventh-order reconstruction optimal weights") {
    const WenoTable& t = weno_reconstruct_table(4);
    CHECK(t.gamma[0] == doctest::Approx(1.0 / 35.0).epsilon(1e-10));
    CHECK(t.gamma[1] == doctest::Approx(12.0 / 35.0).epsilon(1e-10));
    CHECK(t.gamma[2] == doctest::Approx(18.0 / 35.0).epsilon(1e-10));
    CHECK(t.gamma[3] == doctest::Approx(4.0 / 35.0).epsilon(1e-10));
    const double s2[4] = {-1.0 / 12.0, 7.0 / 12.0, 7.0 / 12.0, -1.0 / 12.0};
    for (int m = 0; m < 4; ++m) CHECK(t.c[2][m] == doctest::Approx(s2[m]).epsilon(1e-11));
}

TEST_CASE("interpolation coefficients") {
    const WenoTable& t2 = weno_interp_table(2);
    CHECK(t2.c[0][0] == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(t2.c[0][1] == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(t2.gamma[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(t2.gamma[1] == doctest::Approx(0.75).epsilon(1e-12));
    const double f2[3] = {-1.0 / 8.0, 6.0 / 8.0, 3.0 / 8.0};
    for (int m = 0; m < 3; ++m) CHECK(t2.cfull[m] == doctest::Approx(f2[m]).epsilon(1e-12));

    const WenoTable& t3 = weno_interp_table(3);
    const double s0[3] = {3.0 / 8.0, -10.0 / 8.0, 15.0 / 8.0};
    const double s1[3] = {-1.0 / 8.0, 6.0 / 8.0, 3.0 / 8.0};
    const double s2[3] = {3.0 / 8.0, 6.0 / 8.0, -1.0 / 8.0};
    for (int m = 0; m < 3; ++m) {
        CHECK(t3.c[0][m] == doctest::Approx(s0[m]).epsilon(1e-12));
        CHECK(t3.c[1][m] == doctest::Approx(s1[m]).epsilon(1e-12));
        CHECK(t3.c[2][m] == doctest::Approx(s2[m]).epsilon(1e-12));
    }
    CHECK(t3.gamma[0] == doctest::Approx(1.0 / 16.0).epsilon(1e-11));
    CHECK(t3.gamma[1] == doctest::Approx(10.0 / 16.0).epsilon(1e-11));
    CHECK(t3.gamma[2] == doctest::Approx(5.0 / 16.0).epsilon(1e-11));
    const double f3[5] = {3.0 / 128.0, -20.0 / 128.0, 90.0 / 128.0, 60.0 / 128.0, -5.0 / 128.0};
    for (int m = 0; m < 5; ++m) CHECK(t3.cfull[m] == doctest::Approx(f3[m]).epsilon(1e-11));
}

TEST_CASE("smoothness indicators match the closed forms") {
    const WenoTable& t2 = weno_reconstruct_table(2);
    double q2[3] = {1.0, 2.0, 4.0};
    CHECK(beta_of(t2, 0, q2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(beta_of(t2, 1, q2) == doctest::Approx(4.0).epsilon(1e-12));
    double bf = 0.0;
    for (int m = 0; m < 3; ++m)
        for (int u = 0; u < 3; ++u) bf += t2.Bfull[m][u] * q2[m] * q2[u];
    // 13/12 (q0 - 2 q1 + q2)^2 + 1/4 (q0 - q2)^2
    CHECK(bf == doctest::Approx(13.0 / 12.0 + 9.0 / 4.0).epsilon(1e-12));

    const WenoTable& t3 = weno_reconstruct_table(3);
    double q3[5] = {0.3, -0.7, 1.1, 0.4, -0.2};
    auto js = [](double a, double b, double c, double d1, double d2, double d3) {
        return 13.0 / 12.0 * std::pow(a - 2.0 * b + c, 2) +
               0.25 * std::pow(d1 * a + d2 * b + d3 * c, 2);
    };
    CHECK(beta_of(t3, 0, q3) ==
          doctest::Approx(js(q3[0], q3[1], q3[2], 1.0, -4.0, 3.0)).epsilon(1e-11));
    CHECK(beta_of(t3, 1, q3) ==
          doctest::Approx(js(q3[1], q3[2], q3[3], 1.0, 0.0, -1.0)).epsilon(1e-11));
    CHECK(beta_of(t3, 2, q3) ==
          doctest::Approx(js(q3[2], q3[3], q3[4], 3.0, -4.0, 1.0)).epsilon(1e-11));
}

TEST_CASE("adaptive weights collapse to a one-sided stencil at a step") {
    // step in the rightmost cell only: the value must stay on the flat side
    const WenoTable& t2 = weno_reconstruct_table(2);
    double w2[3] = {0.0, 0.0, 1.0};
    CHECK(std::abs(weno_eval(t2, WenoKind::NP3, w2)) < 1e-12);
    CHECK(std::abs(weno_eval(t2, WenoKind::Z, w2)) < 1e-12);

    const WenoTable& t3 = weno_reconstruct_table(3);
    double w3[5] = {0.0, 0.0, 0.0, 1.0, 1.0};
    CHECK(std::abs(weno_eval(t3, WenoKind::Z, w3)) < 1e-10);

    const WenoTable& t4 = weno_reconstruct_table(4);
    double w4[7] = {0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0};
    CHECK(std::abs(weno_eval(t4, WenoKind::Z, w4)) < 1e-9);
}

TEST_CASE("adaptive weights reduce to the optimal ones on smooth data") {
    for (int r : {2, 3, 4}) {
        const WenoTable& t = weno_reconstruct_table(r);
        const double h = 0.02;
        double w[7];
        for (int m = 0; m < 2 * r - 1; ++m) {
            const double a = (m - (r - 1) - 0.5) * h, b = a + h;
            w[m] = (std::cos(a) - std::cos(b)) / h; // cell average of sin
        }
        const double lin = weno_eval(t, WenoKind::Linear, w);
        const double adaptive = weno_eval(t, r == 2 ? WenoKind::NP3 : WenoKind::Z, w);
        CHECK(std::abs(adaptive - lin) < 1e-9);
        CHECK(std::abs(lin - std::sin(0.5 * h)) < std::pow(h, 2 * r - 1));
    }
}

TEST_CASE("reversed window gives the mirrored biased value") {
    // linear data: both biases must return the exact face value
    std::vector<double> q;
    for (int k = 0; k < 12; ++k) q.push_back(2.0 + 3.0 * k);
    for (int r : {2, 3, 4}) {
        for (bool recon : {true, false}) {
            const WenoTable& t = recon ? weno_reconstruct_table(r) : weno_interp_table(r);
            const int i = 5; // face between cells 5 and 6
            const double expect = 2.0 + 3.0 * (i + 0.5);
            for (WenoKind k : {WenoKind::Linear, WenoKind::Z}) {
                CHECK(weno_eval(t, k, &q[i - r + 1], 1) == doctest::Approx(expect).epsilon(1e-12));
                CHECK(weno_eval(t, k, &q[i + r], -1) == doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }

    // right-biased step mirror: data flat on the right, jump on the left
    const WenoTable& t3 = weno_reconstruct_table(3);
    double w[5] = {1.0, 1.0, 0.0, 0.0, 0.0};
    CHECK(std::abs(weno_eval(t3, WenoKind::Z, &w[4], -1)) < 1e-10);
}

TEST_CASE("polynomial interpolation utility") {
    const double x[3] = {0.0, 1.0, 2.0};
    const double y[3] = {1.0, 3.0, 7.0}; // x^2 + x + 1
    CHECK(lagrange_value(x, y, 3, 3.0) == doctest::Approx(13.0).epsilon(1e-13));
    CHECK(lagrange_value(x, y, 3, 0.5) == doctest::Approx(1.75).epsilon(1e-13));

    // degree-7 extrapolation reproduces a degree-7 polynomial exactly
    double x8[8], y8[8];
    for (int k = 0; k < 8; ++k) {
        x8[k] = k;
        y8[k] = std::pow(0.3 * k - 1.0, 7);
    }
    CHECK(lagrange_value(x8, y8, 8, 9.0) == doctest::Approx(std::pow(1.7, 7)).epsilon(1e-9));
}
