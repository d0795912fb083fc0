#pragma once

#include <string>

#include "shocklab/method_label.hpp"
#include "shocklab/problems.hpp"
#include "shocklab/time_integrate.hpp"

namespace shocklab {

// Fully resolved description of one run: case physics, method, grid, stepping
// and output location. parse_case_* fills unset entries with per-case defaults.
struct CaseConfig {
    std::string id;
    CaseKind kind = CaseKind::StationaryShock1D;
    CaseParams params;
    GasModel gas;
    double length_scale = 0.0; // reference length of the viscous terms; 0 = inviscid
    int levels = 1;            // grid components for the overset cascade

    std::string label;
    SchemeConfig method;
    TimeScheme stepper = TimeScheme::Rk3;
    DtSpec dt;
    bool dt_rule_set = false;
    bool cfl_set = false;
    double fixed_dt = 0.0; // > 0 overrides the timestep rule
    bool dg_characteristic_limiter = false;

    double xa = 0.0, xb = 1.0, ya = 0.0, yb = 1.0;
    int cells = 0, cells_y = 0;
    double spacing = 0.0; // alternative to cells

    double end_time = -1.0;
    double steady_tol = 0.0; // > 0 stops once max |dq|/dt falls below
    long max_steps = 0;      // 0 = unlimited

    std::string output_dir = "out";

    bool two_dimensional() const {
        return kind == CaseKind::IsentropicVortex || kind == CaseKind::ObliqueShock2D;
    }
};

// Key/value text with [section] headers, '#' or ';' comments. Unknown keys or
// sections raise ConfigError with the line number.
CaseConfig parse_case_text(const std::string& text, const std::string& id_hint);
CaseConfig parse_case_file(const std::string& path);

// Name maps used by the CLI and the config reader.
CaseKind case_kind_from_name(const std::string& name);
std::string case_kind_name(CaseKind kind);

} // namespace shocklab
