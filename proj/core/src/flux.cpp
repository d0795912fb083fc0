#include "shocklab/flux.hpp"

#include <cmath>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

// Velocity decomposition along d and its left-hand normal t = (-ny, nx).
struct FrameState {
    double rho, un, ut, p;
};

Vec frame_flux(const FrameState& s, const GasModel& gas, Direction d, int n) {
    PrimitiveState w;
    w.rho = s.rho;
    w.u = s.un * d.nx - s.ut * d.ny;
    w.v = s.un * d.ny + s.ut * d.nx;
    w.p = s.p;
    return physical_flux(w, gas, d, n == 4 ? 2 : 1);
}

// High-order face reconstructions can overshoot into p <= 0 near strong
// shocks. Decode without validity checks; each flux guards only the
// quantities its own formulas need (square roots, fractional powers).
PrimitiveState face_state(const Vec& q, const GasModel& gas) {
    PrimitiveState w;
    w.rho = q[0];
    w.u = q[1] / w.rho;
    double ke = 0.5 * w.rho * w.u * w.u;
    if (q.n == 4) {
        w.v = q[2] / w.rho;
        ke += 0.5 * w.rho * w.v * w.v;
    }
    w.p = (gas.gamma - 1.0) * (q[q.n - 1] - ke);
    return w;
}

// 0 on success, 1 for a non-positive density, 2 when the averaged state has
// no real sound speed.
int build_roe_average(const Vec& ql, const Vec& qr, const GasModel& gas, RoeAverage& avg) {
    const PrimitiveState wl = face_state(ql, gas);
    const PrimitiveState wr = face_state(qr, gas);
    if (!(wl.rho > 0.0) || !(wr.rho > 0.0)) return 1;
    const double sl = std::sqrt(wl.rho), sr = std::sqrt(wr.rho);
    const double w = 1.0 / (sl + sr);
    avg.dim = ql.n == 4 ? 2 : 1;
    avg.rho = sl * sr;
    avg.u = (sl * wl.u + sr * wr.u) * w;
    avg.v = (sl * wl.v + sr * wr.v) * w;
    const double Hl = (ql[ql.n - 1] + wl.p) / wl.rho;
    const double Hr = (qr[qr.n - 1] + wr.p) / wr.rho;
    avg.H = (sl * Hl + sr * Hr) * w;
    const double a2 = (gas.gamma - 1.0) * (avg.H - 0.5 * (avg.u * avg.u + avg.v * avg.v));
    if (!(a2 > 0.0)) return 2;
    avg.a = std::sqrt(a2);
    return 0;
}

EigenSystem build_eigen(double u, double v, double H, double a, Direction d, int dim) {
    EigenSystem es;
    const double nx = d.nx, ny = d.ny;
    const double un = u * nx + v * ny;
    const double ut = v * nx - u * ny;
    const double q2 = u * u + v * v;
    // a^2 = (gamma-1)(H - q2/2), so (gamma-1)/a^2 needs no explicit gamma
    const double k1 = 1.0 / (H - q2 / 2.0);
    const double k2 = k1 * q2 / 2.0;

    if (dim == 1) {
        es.n = 3;
        es.lambda = {u - a, u, u + a, 0.0};
        const double R[3][3] = {
            {1.0, 1.0, 1.0},
            {u - a, u, u + a},
            {H - u * a, q2 / 2.0, H + u * a},
        };
        const double L[3][3] = {
            {0.5 * (k2 + u / a), 0.5 * (-k1 * u - 1.0 / a), 0.5 * k1},
            {1.0 - k2, k1 * u, -k1},
            {0.5 * (k2 - u / a), 0.5 * (-k1 * u + 1.0 / a), 0.5 * k1},
        };
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                es.R[i][j] = R[i][j];
                es.L[i][j] = L[i][j];
            }
        return es;
    }

    es.n = 4;
    es.lambda = {un - a, un, un, un + a};
    const double R[4][4] = {
        {1.0, 1.0, 0.0, 1.0},
        {u - a * nx, u, -ny, u + a * nx},
        {v - a * ny, v, nx, v + a * ny},
        {H - a * un, q2 / 2.0, ut, H + a * un},
    };
    const double L[4][4] = {
        {0.5 * (k2 + un / a), 0.5 * (-k1 * u - nx / a), 0.5 * (-k1 * v - ny / a), 0.5 * k1},
        {1.0 - k2, k1 * u, k1 * v, -k1},
        {-ut, -ny, nx, 0.0},
        {0.5 * (k2 - un / a), 0.5 * (-k1 * u + nx / a), 0.5 * (-k1 * v + ny / a), 0.5 * k1},
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            es.R[i][j] = R[i][j];
            es.L[i][j] = L[i][j];
        }
    return es;
}

} // namespace

Vec physical_flux(const PrimitiveState& w, const GasModel& gas, Direction d, int dim) {
    const double un = w.u * d.nx + w.v * d.ny;
    if (dim == 1) {
        const double e = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * w.u * w.u;
        return Vec(w.rho * w.u, w.rho * w.u * w.u + w.p, (e + w.p) * w.u);
    }
    const double e = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
    return Vec(w.rho * un, w.rho * w.u * un + w.p * d.nx, w.rho * w.v * un + w.p * d.ny,
               (e + w.p) * un);
}

Vec physical_flux(const Vec& q, const GasModel& gas, Direction d) {
    const PrimitiveState w = primitive(q, gas);
    return physical_flux(w, gas, d, q.n == 4 ? 2 : 1);
}

double max_wavespeed(const Vec& q, const GasModel& gas) {
    const PrimitiveState w = primitive(q, gas);
    const double speed = q.n == 4 ? std::sqrt(w.u * w.u + w.v * w.v) : std::abs(w.u);
    return speed + sound_speed(w, gas);
}

double global_max_wavespeed(const double* q, long npts, int ncomp, const GasModel& gas) {
    double m = 0.0;
    for (long i = 0; i < npts; ++i) {
        const double* p = q + i * ncomp;
        const double rho = p[0];
        if (!(rho > 0.0) || !std::isfinite(rho))
            throw NonPhysicalState("non-physical density in wave speed scan", static_cast<int>(i));
        double ke, speed;
        if (ncomp == 4) {
            const double u = p[1] / rho, v = p[2] / rho;
            ke = 0.5 * rho * (u * u + v * v);
            speed = std::sqrt(u * u + v * v);
        } else {
            const double u = p[1] / rho;
            ke = 0.5 * rho * u * u;
            speed = std::abs(u);
        }
        const double pr = (gas.gamma - 1.0) * (p[ncomp - 1] - ke);
        if (!(pr > 0.0) || !std::isfinite(pr))
            throw NonPhysicalState("non-physical pressure in wave speed scan", static_cast<int>(i));
        m = std::max(m, speed + std::sqrt(gas.gamma * pr / rho));
    }
    return m;
}

RoeAverage roe_average(const Vec& ql, const Vec& qr, const GasModel& gas) {
    RoeAverage avg;
    switch (build_roe_average(ql, qr, gas, avg)) {
    case 1: throw NonPhysicalState("Roe average needs positive densities");
    case 2: throw NonPhysicalState("Roe average has non-physical sound speed");
    }
    return avg;
}

EigenSystem eigensystem(const PrimitiveState& w, const GasModel& gas, Direction d, int dim) {
    if (!(w.rho > 0.0) || !(w.p > 0.0))
        throw NonPhysicalState("non-physical state in eigensystem");
    const double a = sound_speed(w, gas);
    const double q2 = dim == 2 ? w.u * w.u + w.v * w.v : w.u * w.u;
    const double H = a * a / (gas.gamma - 1.0) + q2 / 2.0;
    return build_eigen(w.u, dim == 2 ? w.v : 0.0, H, a, d, dim);
}

EigenSystem eigensystem(const RoeAverage& avg, const GasModel& gas, Direction d) {
    (void)gas;
    return build_eigen(avg.u, avg.dim == 2 ? avg.v : 0.0, avg.H, avg.a, d, avg.dim);
}

Vec eig_project(const EigenSystem& es, const Vec& q) {
    Vec w(es.n);
    for (int i = 0; i < es.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < es.n; ++j) s += es.L[i][j] * q[j];
        w[i] = s;
    }
    return w;
}

Vec eig_lift(const EigenSystem& es, const Vec& w) {
    Vec q(es.n);
    for (int i = 0; i < es.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < es.n; ++j) s += es.R[i][j] * w[j];
        q[i] = s;
    }
    return q;
}

Vec abs_jacobian_apply(const EigenSystem& es, const Vec& q) {
    Vec w = eig_project(es, q);
    for (int i = 0; i < es.n; ++i) w[i] *= std::abs(es.lambda[i]);
    return eig_lift(es, w);
}

Vec jacobian_apply(const EigenSystem& es, const Vec& q) {
    Vec w = eig_project(es, q);
    for (int i = 0; i < es.n; ++i) w[i] *= es.lambda[i];
    return eig_lift(es, w);
}

namespace {

Vec roe_flux(const Vec& ql, const Vec& qr, const GasModel& gas, Direction d, bool entropy_fix,
             double lf_alpha) {
    const int dim = ql.n == 4 ? 2 : 1;
    const PrimitiveState wl = face_state(ql, gas), wr = face_state(qr, gas);
    RoeAverage avg;
    if (const int bad = build_roe_average(ql, qr, gas, avg)) {
        // The entropy-fixed flavor is also the hardened one: a face whose
        // trace pair admits no real averaged sound speed takes the global
        // Lax-Friedrichs flux instead of aborting the run. The plain flavor
        // lets the linearization failure surface.
        if (entropy_fix && lf_alpha > 0.0)
            return 0.5 * (physical_flux(wl, gas, d, dim) + physical_flux(wr, gas, d, dim)) -
                   0.5 * lf_alpha * (qr - ql);
        throw NonPhysicalState(bad == 1 ? "Roe average needs positive densities"
                                        : "Roe average has non-physical sound speed");
    }
    EigenSystem es = eigensystem(avg, gas, d);
    Vec alpha = eig_project(es, qr - ql);

    std::array<double, 4> mod{};
    for (int k = 0; k < es.n; ++k) mod[k] = std::abs(es.lambda[k]);
    if (entropy_fix && wl.p > 0.0 && wr.p > 0.0) {
        // Quadratic smoothing of |lambda| on the acoustic fields when the
        // eigenvalue changes sign between the two sides (Harten-Hyman fix 2).
        const double al = sound_speed(wl, gas), ar = sound_speed(wr, gas);
        const double unl = wl.u * d.nx + wl.v * d.ny;
        const double unr = wr.u * d.nx + wr.v * d.ny;
        const int acoustic[2] = {0, es.n - 1};
        const double lam_l[2] = {unl - al, unl + al};
        const double lam_r[2] = {unr - ar, unr + ar};
        for (int j = 0; j < 2; ++j) {
            const int k = acoustic[j];
            const double lam = es.lambda[k];
            const double delta = std::max({0.0, lam - lam_l[j], lam_r[j] - lam});
            if (std::abs(lam) < delta) mod[k] = (lam * lam + delta * delta) / (2.0 * delta);
        }
    }

    Vec diss(es.n);
    for (int i = 0; i < es.n; ++i) {
        double s = 0.0;
        for (int k = 0; k < es.n; ++k) s += es.R[i][k] * mod[k] * alpha[k];
        diss[i] = s;
    }
    return 0.5 * (physical_flux(wl, gas, d, dim) + physical_flux(wr, gas, d, dim)) - 0.5 * diss;
}

// Contribution of one integral-curve segment to the Osher path integral of
// A^-(Q) dQ. lam_s/lam_e are the segment's wave speed at its endpoints; the
// sonic-state callback is only evaluated when the sign changes inside.
template <class SonicFn>
Vec osher_segment(double lam_s, double lam_e, const Vec& Es, const Vec& Ee, SonicFn sonic) {
    if (lam_s >= 0.0 && lam_e >= 0.0) return Vec::zero(Es.n);
    if (lam_s < 0.0 && lam_e < 0.0) return Ee - Es;
    if (lam_s < 0.0) return sonic() - Es;
    return Ee - sonic();
}

Vec osher_flux(const Vec& ql, const Vec& qr, const GasModel& gas, Direction d, bool p_order) {
    const int n = ql.n;
    const double g = gas.gamma;
    const double z = (g - 1.0) / (2.0 * g);
    const PrimitiveState wl = primitive(ql, gas), wr = primitive(qr, gas);
    const double al = sound_speed(wl, gas), ar = sound_speed(wr, gas);
    const double tx = -d.ny, ty = d.nx;

    const FrameState L{wl.rho, wl.u * d.nx + wl.v * d.ny, wl.u * tx + wl.v * ty, wl.p};
    const FrameState R{wr.rho, wr.u * d.nx + wr.v * d.ny, wr.u * tx + wr.v * ty, wr.p};

    const double den = al / std::pow(wl.p, z) + ar / std::pow(wr.p, z);
    const double num = p_order ? al + ar - 0.5 * (g - 1.0) * (R.un - L.un)
                               : al + ar + 0.5 * (g - 1.0) * (R.un - L.un);
    if (!(num > 0.0))
        throw NonPhysicalState("Osher path hits vacuum between face states");
    const double pI = std::pow(num / den, 1.0 / z);

    const double aA = al * std::pow(pI / wl.p, z); // intermediate state on the L-side curve
    const double aB = ar * std::pow(pI / wr.p, z); // intermediate state on the R-side curve
    const double rhoA = g * pI / (aA * aA);
    const double rhoB = g * pI / (aB * aB);

    double uI;
    if (p_order)
        uI = 0.5 * ((L.un + 2.0 * (al - aA) / (g - 1.0)) + (R.un - 2.0 * (ar - aB) / (g - 1.0)));
    else
        uI = 0.5 * ((L.un + 2.0 * (aA - al) / (g - 1.0)) + (R.un - 2.0 * (aB - ar) / (g - 1.0)));

    const FrameState A{rhoA, uI, L.ut, pI};
    const FrameState B{rhoB, uI, R.ut, pI};

    auto E = [&](const FrameState& s) { return frame_flux(s, gas, d, n); };

    // Sonic state on the acoustic curve through `base` with Riemann invariant
    // value inv: |u| = a = |inv| (gamma-1)/(gamma+1) and the base entropy.
    auto sonic_state = [&](const FrameState& base, double a_base, double inv, double sign) {
        const double u_s = inv * (g - 1.0) / (g + 1.0);
        const double a_s = sign * u_s;
        if (!(a_s > 0.0))
            throw NonPhysicalState("degenerate Osher sonic state");
        FrameState s;
        s.un = u_s;
        s.ut = base.ut;
        s.rho = base.rho * std::pow(a_s / a_base, 2.0 / (g - 1.0));
        s.p = base.p * std::pow(a_s / a_base, 2.0 * g / (g - 1.0));
        return s;
    };

    Vec flux = E(L);
    if (p_order) {
        const double IL = L.un + 2.0 * al / (g - 1.0);
        const double IR = R.un - 2.0 * ar / (g - 1.0);
        flux += osher_segment(L.un - al, uI - aA, E(L), E(A),
                              [&] { return E(sonic_state(L, al, IL, 1.0)); });
        if (uI < 0.0) flux += E(B) - E(A);
        flux += osher_segment(uI + aB, R.un + ar, E(B), E(R),
                              [&] { return E(sonic_state(R, ar, IR, -1.0)); });
    } else {
        const double JL = L.un - 2.0 * al / (g - 1.0);
        const double JR = R.un + 2.0 * ar / (g - 1.0);
        flux += osher_segment(L.un + al, uI + aA, E(L), E(A),
                              [&] { return E(sonic_state(L, al, JL, -1.0)); });
        if (uI < 0.0) flux += E(B) - E(A);
        flux += osher_segment(uI - aB, R.un - ar, E(B), E(R),
                              [&] { return E(sonic_state(R, ar, JR, 1.0)); });
    }
    return flux;
}

double ausm_m4(double M, double sign) {
    // sign = +1 gives M(4)+, sign = -1 gives M(4)-
    if (std::abs(M) >= 1.0) return 0.5 * (M + sign * std::abs(M));
    const double b = 0.125;
    const double m2p = 0.25 * (M + 1.0) * (M + 1.0);
    const double m2m = -0.25 * (M - 1.0) * (M - 1.0);
    if (sign > 0.0) return m2p * (1.0 - 16.0 * b * m2m);
    return m2m * (1.0 + 16.0 * b * m2p);
}

double ausm_p5(double M, double sign, double alpha) {
    if (std::abs(M) >= 1.0) {
        const double sgn = M > 0.0 ? 1.0 : (M < 0.0 ? -1.0 : 0.0);
        return 0.5 * (1.0 + sign * sgn);
    }
    const double m2p = 0.25 * (M + 1.0) * (M + 1.0);
    const double m2m = -0.25 * (M - 1.0) * (M - 1.0);
    if (sign > 0.0) return m2p * ((2.0 - M) - 16.0 * alpha * M * m2m);
    return m2m * ((-2.0 - M) + 16.0 * alpha * M * m2p);
}

Vec ausm_flux(const Vec& ql, const Vec& qr, const GasModel& gas, Direction d,
              const AusmParams& par) {
    const int n = ql.n;
    const double g = gas.gamma;
    const PrimitiveState wl = face_state(ql, gas), wr = face_state(qr, gas);
    if (!(wl.rho > 0.0) || !(wr.rho > 0.0))
        throw NonPhysicalState("non-physical density at interface");
    const double unl = wl.u * d.nx + wl.v * d.ny;
    const double unr = wr.u * d.nx + wr.v * d.ny;
    const double Hl = (ql[n - 1] + wl.p) / wl.rho;
    const double Hr = (qr[n - 1] + wr.p) / wr.rho;

    const double ac2l = 2.0 * (g - 1.0) / (g + 1.0) * Hl;
    const double ac2r = 2.0 * (g - 1.0) / (g + 1.0) * Hr;
    if (!(ac2l > 0.0) || !(ac2r > 0.0))
        throw NonPhysicalState("sound speed breakdown at interface");
    const double acl = std::sqrt(ac2l);
    const double acr = std::sqrt(ac2r);
    const double ahl = acl * acl / std::max(acl, std::abs(unl));
    const double ahr = acr * acr / std::max(acr, std::abs(unr));
    const double a12 = std::min(ahl, ahr);

    const double Ml = unl / a12, Mr = unr / a12;
    const double Mbar2 = 0.5 * (unl * unl + unr * unr) / (a12 * a12);
    const double Mo2 = std::min(1.0, std::max(Mbar2, par.Minf * par.Minf));
    const double Mo = std::sqrt(Mo2);
    const double fa = Mo * (2.0 - Mo);
    const double rho12 = 0.5 * (wl.rho + wr.rho);

    const double M12 = ausm_m4(Ml, 1.0) + ausm_m4(Mr, -1.0) -
                       par.Kp / fa * std::max(1.0 - par.sigma * Mbar2, 0.0) * (wr.p - wl.p) /
                           (rho12 * a12 * a12);
    const double mdot = a12 * M12 * (M12 > 0.0 ? wl.rho : wr.rho);

    const double alpha = 3.0 / 16.0 * (-4.0 + 5.0 * fa * fa);
    const double Pl = ausm_p5(Ml, 1.0, alpha);
    const double Pr = ausm_p5(Mr, -1.0, alpha);
    const double p12 = Pl * wl.p + Pr * wr.p -
                       par.Ku * Pl * Pr * (wl.rho + wr.rho) * fa * a12 * (unr - unl);

    const PrimitiveState& up = mdot > 0.0 ? wl : wr;
    const double Hup = mdot > 0.0 ? Hl : Hr;
    Vec f(n);
    f[0] = mdot;
    if (n == 3) {
        f[1] = mdot * up.u + p12 * d.nx;
        f[2] = mdot * Hup;
    } else {
        f[1] = mdot * up.u + p12 * d.nx;
        f[2] = mdot * up.v + p12 * d.ny;
        f[3] = mdot * Hup;
    }
    return f;
}

} // namespace

Vec numerical_flux(const FluxSpec& spec, const Vec& ql, const Vec& qr, const GasModel& gas,
                   Direction d) {
    switch (spec.kind) {
    case FluxKind::Roe:
        return roe_flux(ql, qr, gas, d, false, 0.0);
    case FluxKind::RoeHH2:
        return roe_flux(ql, qr, gas, d, true, spec.alpha);
    case FluxKind::OsherP:
        return osher_flux(ql, qr, gas, d, true);
    case FluxKind::OsherO:
        return osher_flux(ql, qr, gas, d, false);
    case FluxKind::AusmPlusUp:
        return ausm_flux(ql, qr, gas, d, spec.ausm);
    case FluxKind::GlobalLaxFriedrichs: {
        double alpha = spec.alpha;
        if (spec.lf_local)
            alpha = std::max(max_wavespeed(ql, gas), max_wavespeed(qr, gas));
        const int dim = ql.n == 4 ? 2 : 1;
        return 0.5 * (physical_flux(face_state(ql, gas), gas, d, dim) +
                      physical_flux(face_state(qr, gas), gas, d, dim)) -
               0.5 * alpha * (qr - ql);
    }
    case FluxKind::Central: {
        const int dim = ql.n == 4 ? 2 : 1;
        return 0.5 * (physical_flux(face_state(ql, gas), gas, d, dim) +
                      physical_flux(face_state(qr, gas), gas, d, dim));
    }
    }
    throw ConfigError("unknown flux kind");
}

SplitFlux split_flux(const Vec& E, const Vec& q, const SplitSpec& spec) {
    SplitFlux s;
    switch (spec.mode) {
    case SplitMode::LaxFriedrichs:
        s.plus = 0.5 * (E + spec.alpha * q);
        s.minus = 0.5 * (E - spec.alpha * q);
        return s;
    case SplitMode::RoeMatrix:
    case SplitMode::Rotated: {
        const Vec D = abs_jacobian_apply(*spec.abs_eig, q);
        s.plus = 0.5 * (E + D);
        s.minus = 0.5 * (E - D);
        return s;
    }
    case SplitMode::Zero:
        s.plus = 0.5 * E;
        s.minus = 0.5 * E;
        return s;
    case SplitMode::LeftBiased:
        s.plus = E;
        s.minus = Vec::zero(E.n);
        return s;
    }
    throw ConfigError("unknown split mode");
}

Direction rotated_direction(const PrimitiveState& wl, const PrimitiveState& wr,
                            Direction fallback) {
    const double du = std::abs(wl.u - wr.u);
    const double dv = std::abs(wl.v - wr.v);
    const double norm = std::sqrt(du * du + dv * dv);
    if (norm <= 1e-2) return fallback;
    return {du / norm, dv / norm};
}

} // namespace shocklab
