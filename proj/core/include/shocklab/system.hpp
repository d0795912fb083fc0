#pragma once

#include "shocklab/euler.hpp"
#include "shocklab/flux.hpp"
#include "shocklab/vec.hpp"

namespace shocklab {

// Conservation laws the residual kernels are generic over. LinearAdvection
// (unit speed) exists for oracle tests; Burgers carries the scalar shock
// problems; the Euler systems everything else.
enum class SystemKind { LinearAdvection, Burgers, Euler1D, Euler2D };

inline int system_ncomp(SystemKind k) {
    switch (k) {
    case SystemKind::LinearAdvection:
    case SystemKind::Burgers: return 1;
    case SystemKind::Euler1D: return 3;
    case SystemKind::Euler2D: return 4;
    }
    return 1;
}

inline Vec system_flux(SystemKind k, const Vec& q, const GasModel& gas, Direction d = axis_x()) {
    switch (k) {
    case SystemKind::LinearAdvection: return q;
    case SystemKind::Burgers: return Vec::scalar(0.5 * q[0] * q[0]);
    case SystemKind::Euler1D:
    case SystemKind::Euler2D: return physical_flux(q, gas, d);
    }
    return q;
}

inline double system_wavespeed(SystemKind k, const Vec& q, const GasModel& gas) {
    switch (k) {
    case SystemKind::LinearAdvection: return 1.0;
    case SystemKind::Burgers: return std::abs(q[0]);
    case SystemKind::Euler1D:
    case SystemKind::Euler2D: return max_wavespeed(q, gas);
    }
    return 1.0;
}

// Face flux for any system. Scalar laws upwind on the Roe speed (Central and
// GlobalLaxFriedrichs are honored); the Euler systems dispatch on spec.kind.
inline Vec system_face_flux(SystemKind sys, const FluxSpec& spec, const Vec& ql, const Vec& qr,
                            const GasModel& gas, Direction d = axis_x()) {
    if (ql.n > 1) return numerical_flux(spec, ql, qr, gas, d);
    const Vec fl = system_flux(sys, ql, gas, d);
    const Vec fr = system_flux(sys, qr, gas, d);
    if (spec.kind == FluxKind::Central) return 0.5 * (fl + fr);
    if (spec.kind == FluxKind::GlobalLaxFriedrichs) {
        const double a = spec.lf_local ? std::max(system_wavespeed(sys, ql, gas),
                                                  system_wavespeed(sys, qr, gas))
                                       : spec.alpha;
        return 0.5 * (fl + fr) - 0.5 * a * (qr - ql);
    }
    const double s = sys == SystemKind::Burgers ? 0.5 * (ql[0] + qr[0]) : 1.0;
    return s >= 0.0 ? fl : fr;
}

} // namespace shocklab
