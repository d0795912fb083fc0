#include "shocklab/time_integrate.hpp"

#include <algorithm>
#include <cmath>

namespace shocklab {

namespace {

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

} // namespace

int TimeIntegrator::stages() const {
    switch (scheme_) {
    case TimeScheme::ForwardEuler: return 1;
    case TimeScheme::Rk3: return 3;
    case TimeScheme::Rk5: return 6;
    }
    return 1;
}

std::vector<double>& TimeIntegrator::slot(std::size_t i, std::size_t n) {
    work_[i].resize(n);
    return work_[i];
}

void TimeIntegrator::step(std::vector<double>& q, double dt, const Rhs& rhs,
                          const PostStage& post) {
    const std::size_t n = q.size();
    // sized up front so references into it stay valid
    if (work_.size() < 7) work_.resize(7);

    if (scheme_ == TimeScheme::ForwardEuler) {
        std::vector<double>& k = slot(0, n);
        rhs(q, k, 0);
        axpy(q, dt, k);
        if (post) post(q, 0);
        return;
    }

    if (scheme_ == TimeScheme::Rk3) {
        std::vector<double>& k = slot(0, n);
        std::vector<double>& u = slot(1, n);

        rhs(q, k, 0);
        u = q;
        axpy(u, dt, k);
        if (post) post(u, 0);

        rhs(u, k, 1);
        for (std::size_t i = 0; i < n; ++i)
            u[i] = 0.75 * q[i] + 0.25 * (u[i] + dt * k[i]);
        if (post) post(u, 1);

        rhs(u, k, 2);
        for (std::size_t i = 0; i < n; ++i)
            q[i] = q[i] / 3.0 + 2.0 / 3.0 * (u[i] + dt * k[i]);
        if (post) post(q, 2);
        return;
    }

    // 6-stage fifth-order tableau
    std::vector<double>* k[6];
    for (int s = 0; s < 6; ++s) k[s] = &slot(s, n);
    std::vector<double>& y = slot(6, n);
    const double a[6][5] = {
        {0, 0, 0, 0, 0},
        {1.0 / 4.0, 0, 0, 0, 0},
        {1.0 / 8.0, 1.0 / 8.0, 0, 0, 0},
        {0, -1.0 / 2.0, 1.0, 0, 0},
        {3.0 / 16.0, 0, 0, 9.0 / 16.0, 0},
        {-3.0 / 7.0, 2.0 / 7.0, 12.0 / 7.0, -12.0 / 7.0, 8.0 / 7.0},
    };
    const double b[6] = {7.0 / 90.0, 0.0, 32.0 / 90.0, 12.0 / 90.0, 32.0 / 90.0, 7.0 / 90.0};

    rhs(q, *k[0], 0);
    for (int s = 1; s < 6; ++s) {
        y = q;
        for (int j = 0; j < s; ++j)
            if (a[s][j] != 0.0) axpy(y, dt * a[s][j], *k[j]);
        if (post) post(y, s - 1);
        rhs(y, *k[s], s);
    }
    for (int s = 0; s < 6; ++s)
        if (b[s] != 0.0) axpy(q, dt * b[s], *k[s]);
    if (post) post(q, 5);
}

double cfl_timestep(const DtSpec& spec, double dx, double max_wave, int degree) {
    double dt;
    switch (spec.rule) {
    case DtRule::FixedCfl:
        dt = spec.cfl * dx / max_wave;
        break;
    case DtRule::FdVortex:
        dt = 0.07 * dx;
        break;
    case DtRule::DgAccuracy:
        dt = 0.1 * std::pow(dx, 5.0 / 3.0);
        break;
    case DtRule::DgCfl:
        dt = spec.cfl * dx / (max_wave * (2.0 * degree + 1.0));
        break;
    default:
        dt = spec.cfl * dx / max_wave;
    }
    if (spec.viscous_nu > 0.0) dt = std::min(dt, 0.5 * dx * dx / spec.viscous_nu);
    return dt;
}

} // namespace shocklab
