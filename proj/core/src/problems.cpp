#include "shocklab/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

const double kPi = 3.14159265358979323846;

Vec load_vec(const double* q, int n) {
    Vec v(n);
    for (int c = 0; c < n; ++c) v[c] = q[c];
    return v;
}

void store(double* dst, const Vec& v) {
    for (int c = 0; c < v.n; ++c) dst[c] = v[c];
}

bool is_shock_kind(CaseKind k) {
    return k == CaseKind::MovingShock1D || k == CaseKind::StationaryShock1D ||
           k == CaseKind::ViscousShock1D;
}

bool is_nozzle_kind(CaseKind k) {
    return k == CaseKind::Quasi1DNozzle || k == CaseKind::OversetNozzle;
}

PrimitiveState vortex_state(double x, double y, const CaseParams& p, const GasModel& gas) {
    const double dx = x - p.vortex_x0, dy = y - p.vortex_y0;
    const double r2 = dx * dx + dy * dy;
    const double e = std::exp(1.0 - r2);
    const double g = gas.gamma;
    PrimitiveState w;
    w.u = p.vortex_u0 - 5.0 * e * dy / (2.0 * kPi);
    w.v = 5.0 * e * dx / (2.0 * kPi);
    const double term = (g - 1.0) / (16.0 * g * kPi * kPi) * 25.0 * e * e;
    w.rho = std::pow(1.0 - term, 1.0 / (g - 1.0));
    w.p = std::pow(w.rho, g);
    return w;
}

void constant_element_1d(double* coef, int N, int nc, const Vec& v) {
    for (int m = 0; m < (N + 1) * nc; ++m) coef[m] = 0.0;
    const double s = std::sqrt(2.0);
    for (int c = 0; c < nc; ++c) coef[c] = v[c] * s;
}

void constant_element_2d(double* coef, int N, int nc, const Vec& v) {
    const int np = (N + 1) * (N + 1);
    for (int m = 0; m < np * nc; ++m) coef[m] = 0.0;
    for (int c = 0; c < nc; ++c) coef[c] = v[c] * 2.0;
}

void require_ncomp(int have, int want) {
    if (have != want) throw ConfigError("field component count does not match the case");
}

} // namespace

ObliquePair oblique_shock_states(double mach, const GasModel& gas) {
    const double g = gas.gamma;
    const double s2 = std::sqrt(2.0);
    const double Mn = mach / s2;
    if (Mn <= 1.0) throw ConfigError("oblique shock needs a supersonic normal Mach number");
    ObliquePair o;
    o.pre = {g, mach, 0.0, 1.0};
    const double rho2 = g * (g + 1.0) * Mn * Mn / ((g - 1.0) * Mn * Mn + 2.0);
    const double vn2 = g * Mn / rho2; // mass flux rho_pre vn_pre = gamma Mn
    const double vt = mach / s2;
    o.post.rho = rho2;
    o.post.u = (vn2 + vt) / s2;
    o.post.v = (vt - vn2) / s2;
    o.post.p = (2.0 * g * Mn * Mn - (g - 1.0)) / (g + 1.0);
    return o;
}

double nozzle_area(double x) { return 1.0 + x; }
double nozzle_area_slope(double) { return 1.0; }

double quasi1d_back_pressure(double mach_in, double shock_x, const GasModel& gas) {
    if (mach_in <= 1.0) throw ConfigError("nozzle inflow must be supersonic");
    if (shock_x <= 0.0 || shock_x >= 1.0)
        throw ConfigError("nozzle shock must stand inside the duct");
    const double g = gas.gamma;
    auto slope = [&](double x, double M) {
        return M * (1.0 + 0.5 * (g - 1.0) * M * M) / (M * M - 1.0) * nozzle_area_slope(x) /
               nozzle_area(x);
    };
    auto march = [&](double x0, double x1, double M) {
        const int n = std::max(64, static_cast<int>(std::ceil((x1 - x0) / 2.5e-4)));
        const double h = (x1 - x0) / n;
        for (int i = 0; i < n; ++i) {
            const double x = x0 + i * h;
            const double k1 = slope(x, M);
            const double k2 = slope(x + 0.5 * h, M + 0.5 * h * k1);
            const double k3 = slope(x + 0.5 * h, M + 0.5 * h * k2);
            const double k4 = slope(x + h, M + h * k3);
            M += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return M;
    };
    auto isen = [&](double M) { return 1.0 + 0.5 * (g - 1.0) * M * M; };

    const double Mup = march(0.0, shock_x, mach_in);
    if (!(Mup > 1.0)) throw ConfigError("no shock can stand at the requested station");
    const double p_up = std::pow(isen(mach_in) / isen(Mup), g / (g - 1.0));
    const double p_dn = p_up * (2.0 * g * Mup * Mup - (g - 1.0)) / (g + 1.0);
    const double Mdn = std::sqrt(isen(Mup) / (g * Mup * Mup - 0.5 * (g - 1.0)));
    const double Me = march(shock_x, 1.0, Mdn);
    if (!(Me > 0.0 && Me < 1.0)) throw ConfigError("no shock can stand at the requested station");
    return p_dn * std::pow(isen(Mdn) / isen(Me), g / (g - 1.0));
}

ShockStatePair case_shock_states(CaseKind kind, const CaseParams& p, const GasModel& gas) {
    if (!is_shock_kind(kind)) throw ConfigError("case has no plane shock states");
    if (p.mach <= 1.0) throw ConfigError("shock Mach number must exceed 1");
    ShockSpec spec;
    spec.mach = p.mach;
    spec.shock_speed = kind == CaseKind::MovingShock1D ? p.shock_speed : 0.0;
    spec.shock_position = p.shock_position;
    spec.domain_length = p.domain_length;
    ShockStatePair s = moving_shock_states(spec, gas);
    if (p.lab_frame_downstream && kind == CaseKind::MovingShock1D)
        s.downstream.u = s.upstream.rho * s.upstream.u / s.downstream.rho + spec.shock_speed;
    return s;
}

double resolved_back_pressure(CaseKind kind, const CaseParams& p, const GasModel& gas) {
    if (p.back_pressure >= 0.0) return p.back_pressure;
    if (is_shock_kind(kind)) return case_shock_states(kind, p, gas).downstream.p;
    if (is_nozzle_kind(kind)) return quasi1d_back_pressure(p.mach, p.shock_position, gas);
    throw ConfigError("case has no outflow pressure");
}

PrimitiveState initial_primitive(CaseKind kind, const CaseParams& p, const GasModel& gas,
                                 double x, double y) {
    switch (kind) {
    case CaseKind::IsentropicVortex: return vortex_state(x, y, p, gas);
    case CaseKind::MovingShock1D:
    case CaseKind::StationaryShock1D:
    case CaseKind::ViscousShock1D: {
        const ShockStatePair s = case_shock_states(kind, p, gas);
        return x < p.shock_position ? s.upstream : s.downstream;
    }
    case CaseKind::Quasi1DNozzle:
    case CaseKind::OversetNozzle: return {gas.gamma, 0.0, 0.0, 1.0};
    case CaseKind::ObliqueShock2D: {
        const ObliquePair s = oblique_shock_states(p.mach, gas);
        return x - y < p.shock_position ? s.pre : s.post;
    }
    case CaseKind::BurgersSource: break;
    }
    throw ConfigError("case has no vector initial state");
}

double burgers_initial(double x) { return 2.0 - x; }
double burgers_steady(double x) { return 2.0 - std::pow(x, 8.0); }
double burgers_source(double x, double u) { return -8.0 * std::pow(x, 7.0) * u; }

bool exact_available(CaseKind kind) {
    switch (kind) {
    case CaseKind::BurgersSource:
    case CaseKind::IsentropicVortex:
    case CaseKind::MovingShock1D:
    case CaseKind::StationaryShock1D:
    case CaseKind::ObliqueShock2D: return true;
    default: return false;
    }
}

PrimitiveState exact_primitive(CaseKind kind, const CaseParams& p, const GasModel& gas,
                               double x, double y, double t) {
    switch (kind) {
    case CaseKind::BurgersSource: {
        PrimitiveState w;
        w.rho = burgers_steady(x);
        return w;
    }
    case CaseKind::IsentropicVortex: {
        const double L = 14.0;
        double xs = x - p.vortex_u0 * t;
        xs -= L * std::floor(xs / L);
        return vortex_state(xs, y, p, gas);
    }
    case CaseKind::MovingShock1D:
    case CaseKind::StationaryShock1D: {
        const ShockStatePair s = case_shock_states(kind, p, gas);
        const double us = kind == CaseKind::MovingShock1D ? p.shock_speed : 0.0;
        return x < p.shock_position + us * t ? s.upstream : s.downstream;
    }
    case CaseKind::ObliqueShock2D: return initial_primitive(kind, p, gas, x, y);
    default: break;
    }
    throw ConfigError("case has no closed-form solution");
}

void init_case(CaseKind kind, const CaseParams& p, const Grid1D& g, const GasModel& gas,
               bool cell_average, Field1D& out) {
    if (kind == CaseKind::BurgersSource) {
        require_ncomp(out.ncomp, 1);
        for (int i = 0; i < g.n; ++i) out.cell(i)[0] = burgers_initial(g.x(i));
        return;
    }
    require_ncomp(out.ncomp, 3);
    if (is_shock_kind(kind)) {
        const ShockStatePair s = case_shock_states(kind, p, gas);
        const Vec qu = conserved(s.upstream, gas), qd = conserved(s.downstream, gas);
        for (int i = 0; i < g.n; ++i) {
            double w = 1.0;
            if (cell_average)
                w = std::clamp((p.shock_position - g.left_face(i)) / g.dx, 0.0, 1.0);
            else
                w = g.x(i) < p.shock_position ? 1.0 : 0.0;
            store(out.cell(i), w * qu + (1.0 - w) * qd);
        }
        return;
    }
    if (is_nozzle_kind(kind)) {
        const Vec q0 = conserved({gas.gamma, 0.0, 0.0, 1.0}, gas);
        for (int i = 0; i < g.n; ++i) store(out.cell(i), q0);
        return;
    }
    throw ConfigError("case is not one-dimensional");
}

void init_case(CaseKind kind, const CaseParams& p, const Grid2D& g, const GasModel& gas,
               Field2D& out) {
    require_ncomp(out.ncomp, 4);
    if (kind != CaseKind::IsentropicVortex && kind != CaseKind::ObliqueShock2D)
        throw ConfigError("case is not two-dimensional");
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            store(out.cell(i, j), conserved(initial_primitive(kind, p, gas, g.x(i), g.y(j)), gas, 2));
}

void init_case(CaseKind kind, const CaseParams& p, const Grid1D& g, const GasModel& gas,
               DgField1D& out) {
    if (kind == CaseKind::BurgersSource) {
        require_ncomp(out.ncomp, 1);
        dg_project_1d(g, 1, [](double x, double* q) { q[0] = burgers_initial(x); }, out);
        return;
    }
    require_ncomp(out.ncomp, 3);
    dg_project_1d(g, 3,
                  [&](double x, double* q) {
                      store(q, conserved(initial_primitive(kind, p, gas, x), gas));
                  },
                  out);
}

void init_case(CaseKind kind, const CaseParams& p, const Grid2D& g, const GasModel& gas,
               DgField2D& out) {
    require_ncomp(out.ncomp, 4);
    if (kind != CaseKind::IsentropicVortex && kind != CaseKind::ObliqueShock2D)
        throw ConfigError("case is not two-dimensional");
    dg_project_2d(g, 4,
                  [&](double x, double y, double* q) {
                      store(q, conserved(initial_primitive(kind, p, gas, x, y), gas, 2));
                  },
                  out);
}

void quasi1d_source_state(double x, const double* q, const GasModel& gas, double* out) {
    const double f = -nozzle_area_slope(x) / nozzle_area(x);
    const double u = q[1] / q[0];
    const double pr = (gas.gamma - 1.0) * (q[2] - 0.5 * q[1] * u);
    out[0] = f * q[1];
    out[1] = f * q[1] * u;
    out[2] = f * (q[2] + pr) * u;
}

void add_quasi1d_source(const Field1D& q, const Grid1D& g, const GasModel& gas, Field1D& rhs) {
    double s[3];
    for (int i = 0; i < g.n; ++i) {
        quasi1d_source_state(g.x(i), q.cell(i), gas, s);
        double* r = rhs.cell(i);
        for (int c = 0; c < 3; ++c) r[c] += s[c];
    }
}

void add_burgers_source(const Field1D& q, const Grid1D& g, Field1D& rhs) {
    for (int i = 0; i < g.n; ++i) rhs.cell(i)[0] += burgers_source(g.x(i), q.cell(i)[0]);
}

TransportCoeffs sutherland_coeffs(double Tstar, const ViscousModel& vm) {
    if (!(Tstar > 0.0)) throw ConfigError("temperature must be positive");
    TransportCoeffs c;
    const double T = vm.temperature(Tstar);
    c.mu = vm.mu(T);
    c.kappa = vm.kappa(T);
    c.momentum = vm.cm(Tstar);
    c.heat = vm.ch(Tstar);
    return c;
}

std::vector<LevelSpec> overset_nozzle_specs(int nlevels) {
    if (nlevels < 1 || nlevels > 3) throw ConfigError("overset nozzle has 1 to 3 levels");
    std::vector<LevelSpec> specs = {{0.0, 1.0, 1.0 / 200},
                                    {0.48, 0.525, 1.0 / 2200},
                                    {1099.0 / 2200, 1108.0 / 2200, 1.0 / 24200}};
    specs.resize(nlevels);
    return specs;
}

void supersonic_inflow_bc(Field1D& q, const PrimitiveState& in, const GasModel& gas, int width) {
    const Vec s = conserved(in, gas, q.ncomp == 4 ? 2 : 1);
    for (int j = 1; j <= width; ++j) store(q.cell(-j), s);
}

void back_pressure_outflow_bc(Field1D& q, double p_back, const GasModel& gas, int width) {
    PrimitiveState w = primitive(load_vec(q.cell(q.n - 1), q.ncomp), gas);
    w.p = p_back;
    const Vec s = conserved(w, gas, q.ncomp == 4 ? 2 : 1);
    for (int j = 1; j <= width; ++j) store(q.cell(q.n - 1 + j), s);
}

void burgers_inflow_bc(Field1D& q, double value, int width) {
    for (int j = 1; j <= width; ++j) q.cell(-j)[0] = value;
}

void burgers_extrapolation_bc(Field1D& q, const Grid1D& g, int width) {
    const int m = 2 * width;
    double xs[8], ys[8];
    for (int t = 0; t < m; ++t) {
        xs[t] = g.x(g.n - m + t);
        ys[t] = q.cell(g.n - m + t)[0];
    }
    for (int j = 1; j <= width; ++j)
        q.cell(g.n - 1 + j)[0] = lagrange_value(xs, ys, m, g.x(g.n - 1 + j));
}

void periodic_bc_1d(Field1D& q, int width) {
    for (int j = 1; j <= width; ++j)
        for (int c = 0; c < q.ncomp; ++c) {
            q.cell(-j)[c] = q.cell(q.n - j)[c];
            q.cell(q.n - 1 + j)[c] = q.cell(j - 1)[c];
        }
}

void periodic_bc_2d(Field2D& q, int width) {
    const long bytes = sizeof(double) * q.ncomp;
    for (int j = 0; j < q.ny; ++j)
        for (int i = 1; i <= width; ++i) {
            std::memcpy(q.cell(-i, j), q.cell(q.nx - i, j), bytes);
            std::memcpy(q.cell(q.nx - 1 + i, j), q.cell(i - 1, j), bytes);
        }
    for (int i = -width; i < q.nx + width; ++i)
        for (int j = 1; j <= width; ++j) {
            std::memcpy(q.cell(i, -j), q.cell(i, q.ny - j), bytes);
            std::memcpy(q.cell(i, q.ny - 1 + j), q.cell(i, j - 1), bytes);
        }
}

void oblique_shock_bc(Field2D& q, const Grid2D& g, const ObliquePair& s, const GasModel& gas,
                      int width) {
    const double cols = g.ny * g.dy / g.dx;
    const int shift = static_cast<int>(std::lround(cols));
    if (std::abs(cols - shift) > 1e-9)
        throw ConfigError("diagonal periodicity needs the height to span whole columns");
    const Vec qpre = conserved(s.pre, gas, 2), qpost = conserved(s.post, gas, 2);
    const long bytes = sizeof(double) * q.ncomp;
    for (int k = 1; k <= width; ++k)
        for (int i = 0; i < g.nx; ++i) {
            if (i + shift < g.nx)
                std::memcpy(q.cell(i, -k), q.cell(i + shift, g.ny - k), bytes);
            else
                store(q.cell(i, -k), qpost);
            if (i - shift >= 0)
                std::memcpy(q.cell(i, g.ny - 1 + k), q.cell(i - shift, k - 1), bytes);
            else
                store(q.cell(i, g.ny - 1 + k), qpre);
        }
    for (int j = -width; j < g.ny + width; ++j)
        for (int k = 1; k <= width; ++k) {
            store(q.cell(-k, j), qpre);
            std::memcpy(q.cell(g.nx - 1 + k, j), q.cell(g.nx - 1, j), bytes);
        }
}

void dg_supersonic_inflow_bc(DgField1D& q, const PrimitiveState& in, const GasModel& gas) {
    constant_element_1d(q.elem(-1), q.N, q.ncomp, conserved(in, gas, q.ncomp == 4 ? 2 : 1));
}

void dg_back_pressure_outflow_bc(DgField1D& q, double p_back, const GasModel& gas) {
    Vec tr(q.ncomp);
    dg_eval_1d(q.elem(q.ne - 1), q.N, q.ncomp, 1.0, &tr[0]);
    PrimitiveState w = primitive(tr, gas);
    w.p = p_back;
    constant_element_1d(q.elem(q.ne), q.N, q.ncomp, conserved(w, gas, q.ncomp == 4 ? 2 : 1));
}

void dg_burgers_bc(DgField1D& q, double left_value, double right_value) {
    constant_element_1d(q.elem(-1), q.N, 1, Vec::scalar(left_value));
    constant_element_1d(q.elem(q.ne), q.N, 1, Vec::scalar(right_value));
}

void dg_periodic_bc_1d(DgField1D& q) {
    const long bytes = sizeof(double) * q.block();
    std::memcpy(q.elem(-1), q.elem(q.ne - 1), bytes);
    std::memcpy(q.elem(q.ne), q.elem(0), bytes);
}

void dg_periodic_bc_2d(DgField2D& q) {
    const long bytes = sizeof(double) * q.block();
    for (int ey = 0; ey < q.ney; ++ey) {
        std::memcpy(q.elem(-1, ey), q.elem(q.nex - 1, ey), bytes);
        std::memcpy(q.elem(q.nex, ey), q.elem(0, ey), bytes);
    }
    for (int ex = -1; ex <= q.nex; ++ex) {
        std::memcpy(q.elem(ex, -1), q.elem(ex, q.ney - 1), bytes);
        std::memcpy(q.elem(ex, q.ney), q.elem(ex, 0), bytes);
    }
}

// Square elements assumed: the diagonal translation spans ney columns.
void dg_oblique_shock_bc(DgField2D& q, const ObliquePair& s, const GasModel& gas) {
    const Vec qpre = conserved(s.pre, gas, 2), qpost = conserved(s.post, gas, 2);
    const long bytes = sizeof(double) * q.block();
    const int shift = q.ney;
    for (int ex = 0; ex < q.nex; ++ex) {
        if (ex + shift < q.nex)
            std::memcpy(q.elem(ex, -1), q.elem(ex + shift, q.ney - 1), bytes);
        else
            constant_element_2d(q.elem(ex, -1), q.N, q.ncomp, qpost);
        if (ex - shift >= 0)
            std::memcpy(q.elem(ex, q.ney), q.elem(ex - shift, 0), bytes);
        else
            constant_element_2d(q.elem(ex, q.ney), q.N, q.ncomp, qpre);
    }
    for (int ey = -1; ey <= q.ney; ++ey) {
        constant_element_2d(q.elem(-1, ey), q.N, q.ncomp, qpre);
        std::memcpy(q.elem(q.nex, ey), q.elem(q.nex - 1, ey), bytes);
    }
}

} // namespace shocklab
