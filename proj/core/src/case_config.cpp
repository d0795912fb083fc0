#include "shocklab/case_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "shocklab/errors.hpp"

namespace shocklab {

namespace {

struct Entry {
    std::string section, key, value;
    int line = 0;
};

[[noreturn]] void fail(const Entry& e, const std::string& what) {
    throw ConfigError("line " + std::to_string(e.line) + ": " + e.section + "." + e.key + ": " +
                      what);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<Entry> scan(const std::string& text) {
    std::vector<Entry> out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.erase(cut);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        Entry e;
        e.section = section;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = lineno;
        if (e.key.empty() || e.value.empty()) fail(e, "expected key = value");
        out.push_back(e);
    }
    return out;
}

double to_double(const Entry& e) {
    try {
        std::size_t used = 0;
        const double v = std::stod(e.value, &used);
        if (used != e.value.size()) fail(e, "not a number");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(e, "not a number");
    }
}

int to_int(const Entry& e) {
    const double v = to_double(e);
    const int i = static_cast<int>(std::lround(v));
    if (std::abs(v - i) > 1e-12) fail(e, "not an integer");
    return i;
}

bool to_bool(const Entry& e) {
    if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
    if (e.value == "false" || e.value == "0" || e.value == "no") return false;
    fail(e, "not a boolean");
}

TimeScheme to_stepper(const Entry& e) {
    if (e.value == "euler") return TimeScheme::ForwardEuler;
    if (e.value == "rk3") return TimeScheme::Rk3;
    if (e.value == "rk5") return TimeScheme::Rk5;
    fail(e, "stepper must be euler, rk3 or rk5");
}

DtRule to_dt_rule(const Entry& e) {
    if (e.value == "cfl") return DtRule::FixedCfl;
    if (e.value == "fd_vortex") return DtRule::FdVortex;
    if (e.value == "dg_accuracy") return DtRule::DgAccuracy;
    if (e.value == "dg_cfl") return DtRule::DgCfl;
    fail(e, "rule must be cfl, fd_vortex, dg_accuracy or dg_cfl");
}

struct KindName {
    CaseKind kind;
    const char* name;
};

const KindName kKindNames[] = {
    {CaseKind::BurgersSource, "burgers"},
    {CaseKind::IsentropicVortex, "vortex"},
    {CaseKind::MovingShock1D, "moving_shock"},
    {CaseKind::StationaryShock1D, "stationary_shock"},
    {CaseKind::Quasi1DNozzle, "nozzle"},
    {CaseKind::ObliqueShock2D, "oblique_shock"},
    {CaseKind::ViscousShock1D, "viscous_shock"},
    {CaseKind::OversetNozzle, "overset_nozzle"},
};

void apply(CaseConfig& c, const Entry& e) {
    const std::string& s = e.section;
    const std::string& k = e.key;
    if (s == "case") {
        if (k == "kind") c.kind = case_kind_from_name(e.value);
        else if (k == "id") c.id = e.value;
        else if (k == "mach") c.params.mach = to_double(e);
        else if (k == "shock_speed") c.params.shock_speed = to_double(e);
        else if (k == "shock_position") c.params.shock_position = to_double(e);
        else if (k == "domain_length") c.params.domain_length = to_double(e);
        else if (k == "back_pressure") c.params.back_pressure = to_double(e);
        else if (k == "downstream_init") {
            if (e.value == "shock_frame") c.params.lab_frame_downstream = false;
            else if (e.value == "lab_flux") c.params.lab_frame_downstream = true;
            else fail(e, "expected shock_frame or lab_flux");
        }
        else if (k == "gamma") c.gas.gamma = to_double(e);
        else if (k == "length_scale") c.length_scale = to_double(e);
        else if (k == "levels") c.levels = to_int(e);
        else fail(e, "unknown key");
    } else if (s == "method") {
        if (k == "label") c.label = e.value;
        else if (k == "stepper") c.stepper = to_stepper(e);
        else if (k == "cfl") { c.dt.cfl = to_double(e); c.cfl_set = true; }
        else if (k == "dt_rule") { c.dt.rule = to_dt_rule(e); c.dt_rule_set = true; }
        else if (k == "dt") c.fixed_dt = to_double(e);
        else if (k == "characteristic_limiter") c.dg_characteristic_limiter = to_bool(e);
        else fail(e, "unknown key");
    } else if (s == "grid") {
        if (k == "cells") c.cells = to_int(e);
        else if (k == "cells_y") c.cells_y = to_int(e);
        else if (k == "spacing") c.spacing = to_double(e);
        else fail(e, "unknown key");
    } else if (s == "run") {
        if (k == "end_time") c.end_time = to_double(e);
        else if (k == "steady_tol") c.steady_tol = to_double(e);
        else if (k == "max_steps") c.max_steps = to_int(e);
        else fail(e, "unknown key");
    } else if (s == "output") {
        if (k == "dir") c.output_dir = e.value;
        else fail(e, "unknown key");
    } else {
        fail(e, "unknown section");
    }
}

struct KindDefaults {
    double xa, xb, ya, yb;
    int cells;
    double end_time;
};

KindDefaults kind_defaults(const CaseConfig& c) {
    const double L = c.params.domain_length;
    switch (c.kind) {
    case CaseKind::BurgersSource: return {0.0, 1.0, 0.0, 0.0, 100, 60.0};
    case CaseKind::IsentropicVortex: return {0.0, 14.0, -7.0, 7.0, 350, 14.0};
    case CaseKind::MovingShock1D:
        return {0.0, L, 0.0, 0.0, static_cast<int>(std::lround(L * 100.0)), 1.0};
    case CaseKind::StationaryShock1D: return {0.0, 1.0, 0.0, 0.0, 100, 100.0};
    case CaseKind::Quasi1DNozzle: return {0.0, 1.0, 0.0, 0.0, 100, 100.0};
    case CaseKind::ObliqueShock2D: return {0.0, 2.0, 0.0, 1.0, 200, 10.0};
    case CaseKind::ViscousShock1D: return {0.0, 1.0, 0.0, 0.0, 100, 100.0};
    case CaseKind::OversetNozzle: return {0.0, 1.0, 0.0, 0.0, 200, 100.0};
    }
    return {0.0, 1.0, 0.0, 0.0, 100, 1.0};
}

void finalize(CaseConfig& c) {
    if (c.label.empty()) throw ConfigError("method.label is required");
    c.method = parse_method_label(c.label);
    c.label = c.method.canonical;
    c.method.dg.characteristic = c.dg_characteristic_limiter;

    const KindDefaults d = kind_defaults(c);
    c.xa = d.xa;
    c.xb = d.xb;
    c.ya = d.ya;
    c.yb = d.yb;
    if (c.spacing > 0.0) {
        c.cells = static_cast<int>(std::lround((c.xb - c.xa) / c.spacing));
        if (c.two_dimensional())
            c.cells_y = static_cast<int>(std::lround((c.yb - c.ya) / c.spacing));
    }
    if (c.cells <= 0) c.cells = d.cells;
    if (c.two_dimensional() && c.cells_y <= 0)
        c.cells_y = static_cast<int>(std::lround(c.cells * (c.yb - c.ya) / (c.xb - c.xa)));
    if (c.end_time < 0.0) c.end_time = d.end_time;

    if (!c.dt_rule_set) {
        if (c.kind == CaseKind::IsentropicVortex)
            c.dt.rule = c.method.is_dg() ? DtRule::DgAccuracy : DtRule::FdVortex;
        else
            c.dt.rule = c.method.is_dg() ? DtRule::DgCfl : DtRule::FixedCfl;
    }
    // the element CFL limit tightens with the stage count; stay under it by default
    if (!c.cfl_set && c.dt.rule == DtRule::DgCfl) c.dt.cfl = 0.35;
    if (c.kind == CaseKind::ViscousShock1D && c.length_scale <= 0.0) c.length_scale = 1.0;
    if (c.id.empty()) c.id = case_kind_name(c.kind);

    if (c.levels < 1 || c.levels > 3) throw ConfigError("levels must be 1 to 3");
    if (c.end_time <= 0.0 && c.steady_tol <= 0.0)
        throw ConfigError("needs a positive end_time or steady_tol");
}

} // namespace

CaseKind case_kind_from_name(const std::string& name) {
    for (const KindName& k : kKindNames)
        if (name == k.name) return k.kind;
    throw ConfigError("unknown case kind '" + name + "'");
}

std::string case_kind_name(CaseKind kind) {
    for (const KindName& k : kKindNames)
        if (kind == k.kind) return k.name;
    return "unknown";
}

CaseConfig parse_case_text(const std::string& text, const std::string& id_hint) {
    CaseConfig c;
    c.id = id_hint;
    bool have_kind = false;
    for (const Entry& e : scan(text)) {
        if (e.section == "case" && e.key == "kind") have_kind = true;
        apply(c, e);
    }
    if (!have_kind) throw ConfigError("case.kind is required");
    finalize(c);
    return c;
}

CaseConfig parse_case_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open case file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    auto slash = path.find_last_of("/\\");
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = stem.rfind('.');
    if (dot != std::string::npos) stem.erase(dot);
    return parse_case_text(buf.str(), stem);
}

} // namespace shocklab
