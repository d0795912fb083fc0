#include "shocklab/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "shocklab/errors.hpp"
#include "shocklab/problems.hpp"

namespace shocklab {

namespace {

const double kSqrt2 = std::sqrt(2.0);

double reference_mass_flux(const ShockSpec& spec, const GasModel& gas) {
    const ShockStatePair s = moving_shock_states(spec, gas);
    return s.upstream.rho * (s.upstream.u - spec.shock_speed);
}

// 8-point Gauss rule reused for exact cell means.
const DgBasis& mean_rule() { return dg_basis(7); }

} // namespace

void validate(const DiagnosticsReport& rep) {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(rep.max_pe) || !finite(rep.cep_final) || !finite(rep.l1) || !finite(rep.order))
        throw ConfigError("report summary is not finite");
    if (rep.series.x.size() != rep.series.v.size())
        throw ConfigError("report series lengths disagree");
    for (std::size_t k = 0; k < rep.series.x.size(); ++k) {
        if (!finite(rep.series.x[k]) || !finite(rep.series.v[k]))
            throw ConfigError("report series entry is not finite");
        if (k > 0 && rep.series.x[k] < rep.series.x[k - 1])
            throw ConfigError("report abscissae decrease");
    }
}

double cep(const Field1D& q, const Grid1D& g, const ShockSpec& spec, const GasModel& gas) {
    const double R = reference_mass_flux(spec, gas);
    double sum = 0.0;
    for (int i = 0; i < g.n; ++i) {
        const double* c = q.cell(i);
        sum += c[1] - c[0] * spec.shock_speed - R;
    }
    return sum / R * g.dx * 100.0;
}

double cep(const DgField1D& q, const Grid1D& g, const ShockSpec& spec, const GasModel& gas) {
    const double R = reference_mass_flux(spec, gas);
    double sum = 0.0;
    for (int e = 0; e < q.ne; ++e) {
        const double* c = q.elem(e);
        sum += (c[1] - c[0] * spec.shock_speed) / kSqrt2 - R;
    }
    return sum / R * g.dx * 100.0;
}

double flux_quantity(FluxQuantity which, const double* q, const GasModel& gas) {
    const double rho = q[0], m = q[1], e = q[2];
    const double u = m / rho;
    const double p = (gas.gamma - 1.0) * (e - 0.5 * m * u);
    switch (which) {
    case FluxQuantity::MassFlux: return m;
    case FluxQuantity::MomentumFlux: return m * u + p;
    case FluxQuantity::EnergyFlux: return (e + p) * u;
    }
    return 0.0;
}

namespace {

Series profile_1d(const Grid1D& g, double reference, const std::function<double(int)>& value_at) {
    Series s;
    s.x.resize(g.n);
    s.v.resize(g.n);
    for (int i = 0; i < g.n; ++i) {
        s.x[i] = g.x(i);
        s.v[i] = std::abs(reference - value_at(i)) / reference * 100.0;
    }
    return s;
}

} // namespace

Series pe_profile(const Field1D& q, const Grid1D& g, FluxQuantity which, double reference,
                  const GasModel& gas) {
    return profile_1d(g, reference, [&](int i) { return flux_quantity(which, q.cell(i), gas); });
}

Series pe_profile(const DgField1D& q, const Grid1D& g, FluxQuantity which, double reference,
                  const GasModel& gas) {
    return profile_1d(g, reference, [&](int i) {
        double c[4];
        dg_eval_1d(q.elem(i), q.N, q.ncomp, 0.0, c);
        return flux_quantity(which, c, gas);
    });
}

Series pe_profile_area(const Field1D& q, const Grid1D& g, double reference, const GasModel&) {
    return profile_1d(g, reference, [&](int i) { return nozzle_area(g.x(i)) * q.cell(i)[1]; });
}

Series pe_profile_area(const DgField1D& q, const Grid1D& g, double reference, const GasModel&) {
    return profile_1d(g, reference, [&](int i) {
        double c[4];
        dg_eval_1d(q.elem(i), q.N, q.ncomp, 0.0, c);
        return nozzle_area(g.x(i)) * c[1];
    });
}

namespace {

constexpr int kXiSamples = 200;

Series xi_profile(double reference, const std::function<double(double, double)>& mass_flux_normal) {
    Series s;
    s.x.resize(kXiSamples);
    s.v.resize(kXiSamples);
    for (int k = 0; k < kXiSamples; ++k) {
        const double xi = static_cast<double>(k) / (kXiSamples - 1);
        s.x[k] = xi;
        const double q = mass_flux_normal(0.5 + xi, xi);
        s.v[k] = std::abs(reference - q) / reference * 100.0;
    }
    return s;
}

} // namespace

Series pe_profile_xi(const Field2D& q, const Grid2D& g, double reference, const GasModel&) {
    return xi_profile(reference, [&](double px, double py) {
        const double fx = (px - g.x0) / g.dx, fy = (py - g.y0) / g.dy;
        const int ir = std::clamp(static_cast<int>(std::floor(fx)), -1, g.nx - 1);
        const int jr = std::clamp(static_cast<int>(std::floor(fy)), -1, g.ny - 1);
        const double tx = fx - ir, ty = fy - jr;
        double mx = 0.0, my = 0.0;
        for (int dj = 0; dj < 2; ++dj)
            for (int di = 0; di < 2; ++di) {
                const double w = (di ? tx : 1.0 - tx) * (dj ? ty : 1.0 - ty);
                const double* c = q.cell(ir + di, jr + dj);
                mx += w * c[1];
                my += w * c[2];
            }
        return (mx - my) / kSqrt2;
    });
}

Series pe_profile_xi(const DgField2D& q, const Grid2D& g, double reference, const GasModel&) {
    return xi_profile(reference, [&](double px, double py) {
        const int ex = std::clamp(static_cast<int>(std::floor((px - g.x0) / g.dx + 0.5)), 0,
                                  g.nx - 1);
        const int ey = std::clamp(static_cast<int>(std::floor((py - g.y0) / g.dy + 0.5)), 0,
                                  g.ny - 1);
        const double r = 2.0 * (px - g.x(ex)) / g.dx;
        const double s = 2.0 * (py - g.y(ey)) / g.dy;
        double c[4];
        dg_eval_2d(q.elem(ex, ey), q.N, q.ncomp, r, s, c);
        return (c[1] - c[2]) / kSqrt2;
    });
}

double max_value(const Series& s) {
    double m = 0.0;
    for (double v : s.v) m = std::max(m, v);
    return m;
}

double l1_point_error(const Field1D& q, const Grid1D& g, int comp,
                      const std::function<double(double)>& exact) {
    double sum = 0.0;
    for (int i = 0; i < g.n; ++i) sum += std::abs(q.cell(i)[comp] - exact(g.x(i)));
    return sum / g.n;
}

double l1_point_error(const Field2D& q, const Grid2D& g, int comp,
                      const std::function<double(double, double)>& exact) {
    double sum = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) sum += std::abs(q.cell(i, j)[comp] - exact(g.x(i), g.y(j)));
    return sum / (static_cast<double>(g.nx) * g.ny);
}

namespace {

double exact_mean_1d(const std::function<double(double)>& f, double xc, double dx) {
    const DgBasis& b = mean_rule();
    double s = 0.0;
    for (int gp = 0; gp < 8; ++gp) s += b.qw[gp] * f(xc + 0.5 * dx * b.qp[gp]);
    return 0.5 * s;
}

double exact_mean_2d(const std::function<double(double, double)>& f, double xc, double yc,
                     double dx, double dy) {
    const DgBasis& b = mean_rule();
    double s = 0.0;
    for (int gy = 0; gy < 8; ++gy)
        for (int gx = 0; gx < 8; ++gx)
            s += b.qw[gy] * b.qw[gx] * f(xc + 0.5 * dx * b.qp[gx], yc + 0.5 * dy * b.qp[gy]);
    return 0.25 * s;
}

} // namespace

double l1_mean_error(const Field1D& q, const Grid1D& g, int comp,
                     const std::function<double(double)>& exact) {
    double sum = 0.0;
    for (int i = 0; i < g.n; ++i) sum += std::abs(q.cell(i)[comp] - exact_mean_1d(exact, g.x(i), g.dx));
    return sum / g.n;
}

double l1_mean_error(const DgField1D& q, const Grid1D& g, int comp,
                     const std::function<double(double)>& exact) {
    double sum = 0.0;
    for (int e = 0; e < q.ne; ++e) {
        const double mean = q.elem(e)[comp] / kSqrt2;
        sum += std::abs(mean - exact_mean_1d(exact, g.x(e), g.dx));
    }
    return sum / q.ne;
}

double l1_mean_error(const DgField2D& q, const Grid2D& g, int comp,
                     const std::function<double(double, double)>& exact) {
    double sum = 0.0;
    for (int ey = 0; ey < q.ney; ++ey)
        for (int ex = 0; ex < q.nex; ++ex) {
            const double mean = q.elem(ex, ey)[comp] / 2.0;
            sum += std::abs(mean - exact_mean_2d(exact, g.x(ex), g.y(ey), g.dx, g.dy));
        }
    return sum / (static_cast<double>(q.nex) * q.ney);
}

std::vector<OrderRow> l1_error_and_order(const std::vector<std::pair<double, double>>& runs) {
    if (runs.size() < 2) throw ConfigError("order table needs at least two spacings");
    std::vector<OrderRow> rows(runs.size());
    for (std::size_t k = 0; k < runs.size(); ++k) {
        rows[k].spacing = runs[k].first;
        rows[k].error = runs[k].second;
        if (k > 0) {
            const double hr = runs[k - 1].first / runs[k].first;
            const double er = runs[k - 1].second / runs[k].second;
            if (hr <= 1.0) throw ConfigError("order table spacings must decrease");
            rows[k].order = er > 0.0 ? std::log(er) / std::log(hr) : 0.0;
        }
    }
    return rows;
}

} // namespace shocklab
