#include "shocklab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include <json.hpp>

#include "shocklab/errors.hpp"
#include "shocklab/fd_fv.hpp"
#include "shocklab/overset.hpp"
#include "shocklab/problems.hpp"

namespace shocklab {

namespace {

std::string fmtg(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

const char* stepper_name(TimeScheme s) {
    switch (s) {
    case TimeScheme::ForwardEuler: return "euler";
    case TimeScheme::Rk3: return "rk3";
    case TimeScheme::Rk5: return "rk5";
    }
    return "?";
}

const char* rule_name(DtRule r) {
    switch (r) {
    case DtRule::FixedCfl: return "cfl";
    case DtRule::FdVortex: return "fd_vortex";
    case DtRule::DgAccuracy: return "dg_accuracy";
    case DtRule::DgCfl: return "dg_cfl";
    }
    return "?";
}

std::string out_path(const CaseConfig& cfg, const std::string& stem) {
    return (std::filesystem::path(cfg.output_dir) / (cfg.id + "_" + stem)).string();
}

void add_csv(const CaseConfig& cfg, RunResult& res, const std::string& stem,
             const std::string& header, const std::vector<const std::vector<double>*>& cols) {
    const std::string path = out_path(cfg, stem);
    std::string text = header + ",method\n";
    const std::size_t rows = cols.empty() ? 0 : cols[0]->size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (const auto* c : cols) {
            text += fmtg((*c)[r]);
            text += ',';
        }
        text += cfg.label;
        text += '\n';
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    res.emitted.push_back(path);
}

void write_manifest(const CaseConfig& cfg, RunResult& res) {
    nlohmann::json j;
    j["id"] = cfg.id;
    j["case"] = case_kind_name(cfg.kind);
    j["method"] = cfg.label;
    j["version"] = "1.0.0";
    j["config"] = {{"mach", cfg.params.mach},
                   {"shock_speed", cfg.params.shock_speed},
                   {"shock_position", cfg.params.shock_position},
                   {"domain_length", cfg.params.domain_length},
                   {"back_pressure", cfg.params.back_pressure},
                   {"gamma", cfg.gas.gamma},
                   {"length_scale", cfg.length_scale},
                   {"levels", cfg.levels},
                   {"cells", cfg.cells},
                   {"cells_y", cfg.cells_y},
                   {"stepper", stepper_name(cfg.stepper)},
                   {"dt_rule", rule_name(cfg.dt.rule)},
                   {"cfl", cfg.dt.cfl},
                   {"fixed_dt", cfg.fixed_dt},
                   {"end_time", cfg.end_time},
                   {"steady_tol", cfg.steady_tol},
                   {"max_steps", cfg.max_steps}};
    j["termination"] = res.termination;
    j["exit_code"] = res.exit_code;
    if (!res.failure_detail.empty()) j["failure"] = res.failure_detail;
    j["steps"] = res.steps;
    j["final_time"] = res.final_time;
    j["wall_seconds"] = res.wall_seconds;
    const std::string path = out_path(cfg, "manifest.json");
    std::vector<std::string> files = res.emitted;
    files.push_back(path);
    j["files"] = files;

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
    res.emitted.push_back(path);
}

void prepare_output(const CaseConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
}

// Shared stepping loop: horizon, steady stop, step cap, failure capture.
void time_loop(const CaseConfig& cfg, std::vector<double>& state,
               const TimeIntegrator::Rhs& rhs, const TimeIntegrator::PostStage& post,
               const std::function<double()>& pick_dt,
               const std::function<void(double)>& after_step, RunResult& res) {
    TimeIntegrator ti(cfg.stepper);
    const auto wall0 = std::chrono::steady_clock::now();
    double t = 0.0;
    std::vector<double> prev;
    try {
        for (;;) {
            if (cfg.end_time > 0.0 && t >= cfg.end_time * (1.0 - 1e-12)) {
                res.termination = "end_time";
                break;
            }
            if (cfg.max_steps > 0 && res.steps >= cfg.max_steps) {
                res.termination = "max_steps";
                break;
            }
            double dt = pick_dt();
            if (cfg.end_time > 0.0) dt = std::min(dt, cfg.end_time - t);
            if (!(dt > 0.0) || !std::isfinite(dt)) throw NonPhysicalState("timestep collapsed");
            if (cfg.steady_tol > 0.0) prev = state;
            ti.step(state, dt, rhs, post);
            t += dt;
            ++res.steps;
            if (after_step) after_step(t);
            if (cfg.steady_tol > 0.0) {
                double m = 0.0;
                for (std::size_t k = 0; k < state.size(); ++k)
                    m = std::max(m, std::abs(state[k] - prev[k]));
                res.steady_residual = m / dt;
                if (!std::isfinite(res.steady_residual))
                    throw NonPhysicalState("solution left the physical regime");
                if (res.steady_residual < cfg.steady_tol) {
                    res.termination = "steady";
                    break;
                }
            }
        }
    } catch (const NonPhysicalState& e) {
        res.exit_code = 2;
        res.termination = "nonphysical";
        res.failure_detail = e.what();
    }
    res.final_time = t;
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
}

struct SteadyRefs {
    double mass, momentum, energy;
};

SteadyRefs steady_refs(const PrimitiveState& upstream, const GasModel& gas) {
    Vec qu = conserved(upstream, gas);
    return {flux_quantity(FluxQuantity::MassFlux, &qu[0], gas),
            flux_quantity(FluxQuantity::MomentumFlux, &qu[0], gas),
            flux_quantity(FluxQuantity::EnergyFlux, &qu[0], gas)};
}

void fill_report(const CaseConfig& cfg, RunResult& res) {
    res.report.case_id = cfg.id;
    switch (cfg.kind) {
    case CaseKind::BurgersSource:
    case CaseKind::IsentropicVortex:
        res.report.metric = "l1";
        res.report.l1 = res.l1;
        break;
    case CaseKind::MovingShock1D:
        res.report.metric = "cep";
        res.report.series = res.cep_series;
        res.report.cep_final = res.cep_final;
        break;
    case CaseKind::OversetNozzle:
        res.report.metric = "cascade_pe";
        for (std::size_t k = 0; k < res.cascade_pe.size(); ++k) {
            res.report.series.x.push_back(static_cast<double>(k + 1));
            res.report.series.v.push_back(res.cascade_pe[k]);
        }
        res.report.max_pe = res.max_pe;
        break;
    default:
        res.report.metric = "pe";
        res.report.series = res.pe_mass;
        res.report.max_pe = res.max_pe;
        break;
    }
    if (res.exit_code == 0) validate(res.report);
}

// ---------------------------------------------------------------- FD / FV 1-D

void run_fd_1d(const CaseConfig& cfg, bool emit, RunResult& res) {
    const bool burgers = cfg.kind == CaseKind::BurgersSource;
    const bool nozzle = cfg.kind == CaseKind::Quasi1DNozzle;
    const bool viscous = cfg.kind == CaseKind::ViscousShock1D;
    const SystemKind sys = burgers ? SystemKind::Burgers : SystemKind::Euler1D;
    const int nc = burgers ? 1 : 3;
    SpatialScheme sch = cfg.method.scheme;
    const int visc_r = 3; // central stencil of the diffusive derivatives
    const int ng = std::max(scheme_ghost_width(sch), viscous ? 2 * visc_r : 0);
    const GasModel gas = cfg.gas;

    Grid1D g = Grid1D::over(cfg.xa, cfg.xb, cfg.cells);
    Field1D q(g.n, ng, nc), drv(g.n, ng, nc);
    init_case(cfg.kind, cfg.params, g, gas, sch.finite_volume, q);

    PrimitiveState inflow{};
    double p_back = 0.0;
    if (!burgers) {
        inflow = nozzle ? PrimitiveState{gas.gamma, cfg.params.mach, 0.0, 1.0}
                        : case_shock_states(cfg.kind, cfg.params, gas).upstream;
        p_back = resolved_back_pressure(cfg.kind, cfg.params, gas);
    }
    auto bc = [&](Field1D& f) {
        if (burgers) {
            burgers_inflow_bc(f, 2.0, ng);
            burgers_extrapolation_bc(f, g, ng);
        } else {
            supersonic_inflow_bc(f, inflow, gas, ng);
            back_pressure_outflow_bc(f, p_back, gas, ng);
        }
    };

    ViscousModel vm;
    vm.L = cfg.length_scale;

    std::vector<double> state = q.data;
    auto scatter = [&](const std::vector<double>& s) {
        std::copy(s.begin(), s.end(), q.data.begin());
    };

    auto rhs = [&](const std::vector<double>& s, std::vector<double>& out, int) {
        scatter(s);
        bc(q);
        const double wmax = field_max_wavespeed(q, sys, gas);
        sch.alpha = wmax;
        sch.flux.alpha = wmax;
        std::fill(drv.data.begin(), drv.data.end(), 0.0);
        flux_divergence_1d(q, g, sys, sch, gas, drv);
        if (nozzle) add_quasi1d_source(q, g, gas, drv);
        if (burgers) add_burgers_source(q, g, drv);
        if (viscous) viscous_residual_1d(q, g, vm, gas, visc_r, drv);
        out = drv.data;
    };

    auto pick_dt = [&]() {
        scatter(state);
        bc(q);
        if (cfg.fixed_dt > 0.0) return cfg.fixed_dt;
        DtSpec ds = cfg.dt;
        if (viscous) ds.viscous_nu = max_diffusivity(q, vm, gas);
        return cfl_timestep(ds, g.dx, field_max_wavespeed(q, sys, gas));
    };

    ShockSpec spec{cfg.params.mach, cfg.params.shock_speed, cfg.params.shock_position,
                   cfg.params.domain_length};
    auto after = [&](double t) {
        if (cfg.kind != CaseKind::MovingShock1D) return;
        scatter(state);
        res.cep_series.x.push_back(t);
        res.cep_series.v.push_back(cep(q, g, spec, gas));
    };

    time_loop(cfg, state, rhs, {}, pick_dt, after, res);

    if (res.exit_code == 0) {
        scatter(state);
        bc(q);
        switch (cfg.kind) {
        case CaseKind::BurgersSource:
            res.l1 = sch.finite_volume ? l1_mean_error(q, g, 0, burgers_steady)
                                       : l1_point_error(q, g, 0, burgers_steady);
            break;
        case CaseKind::MovingShock1D: {
            if (!res.cep_series.v.empty()) res.cep_final = res.cep_series.v.back();
            auto exact = [&](double x) {
                return conserved(
                    exact_primitive(cfg.kind, cfg.params, gas, x, 0.0, res.final_time), gas)[0];
            };
            res.l1 = l1_point_error(q, g, 0, exact);
            break;
        }
        case CaseKind::Quasi1DNozzle:
            res.pe_mass = pe_profile_area(q, g, gas.gamma * cfg.params.mach, gas);
            res.max_pe = max_value(res.pe_mass);
            break;
        default: { // stationary and viscous shocks
            const SteadyRefs r = steady_refs(inflow, gas);
            res.pe_mass = pe_profile(q, g, FluxQuantity::MassFlux, r.mass, gas);
            res.pe_momentum = pe_profile(q, g, FluxQuantity::MomentumFlux, r.momentum, gas);
            res.pe_energy = pe_profile(q, g, FluxQuantity::EnergyFlux, r.energy, gas);
            res.max_pe = max_value(res.pe_mass);
            break;
        }
        }
    }

    if (emit) {
        prepare_output(cfg);
        scatter(state);
        std::vector<std::vector<double>> cols(1 + nc);
        for (int i = 0; i < g.n; ++i) {
            cols[0].push_back(g.x(i));
            for (int c = 0; c < nc; ++c) cols[1 + c].push_back(q.cell(i)[c]);
        }
        std::vector<const std::vector<double>*> ptrs;
        for (const auto& c : cols) ptrs.push_back(&c);
        add_csv(cfg, res, "solution.csv", burgers ? "x,u" : "x,rho,momentum,energy", ptrs);
        if (cfg.kind == CaseKind::MovingShock1D)
            add_csv(cfg, res, "cep.csv", "t,cep_percent", {&res.cep_series.x, &res.cep_series.v});
        else if (!res.pe_mass.x.empty() && !res.pe_momentum.x.empty())
            add_csv(cfg, res, "pe.csv",
                    "x,pe_mass_flux_percent,pe_momentum_flux_percent,pe_energy_flux_percent",
                    {&res.pe_mass.x, &res.pe_mass.v, &res.pe_momentum.v, &res.pe_energy.v});
        else if (!res.pe_mass.x.empty())
            add_csv(cfg, res, "pe.csv", "x,pe_area_mass_flux_percent",
                    {&res.pe_mass.x, &res.pe_mass.v});
    }
}

// ---------------------------------------------------------------- FD / FV 2-D

void run_fd_2d(const CaseConfig& cfg, bool emit, RunResult& res) {
    const bool vortex = cfg.kind == CaseKind::IsentropicVortex;
    SpatialScheme sch = cfg.method.scheme;
    const int ng = scheme_ghost_width(sch);
    const GasModel gas = cfg.gas;

    Grid2D g = Grid2D::over(cfg.xa, cfg.xb, cfg.cells, cfg.ya, cfg.yb, cfg.cells_y);
    Field2D q(g.nx, g.ny, ng, 4), drv(g.nx, g.ny, ng, 4);
    init_case(cfg.kind, cfg.params, g, gas, q);
    ObliquePair pair{};
    if (!vortex) pair = oblique_shock_states(cfg.params.mach, gas);

    auto bc = [&](Field2D& f) {
        if (vortex)
            periodic_bc_2d(f, ng);
        else
            oblique_shock_bc(f, g, pair, gas, ng);
    };

    std::vector<double> state = q.data;
    auto scatter = [&](const std::vector<double>& s) {
        std::copy(s.begin(), s.end(), q.data.begin());
    };

    auto rhs = [&](const std::vector<double>& s, std::vector<double>& out, int) {
        scatter(s);
        bc(q);
        const double wmax = field_max_wavespeed(q, SystemKind::Euler2D, gas);
        sch.alpha = wmax;
        sch.flux.alpha = wmax;
        std::fill(drv.data.begin(), drv.data.end(), 0.0);
        flux_divergence_2d(q, g, SystemKind::Euler2D, sch, gas, drv);
        out = drv.data;
    };

    auto pick_dt = [&]() {
        scatter(state);
        bc(q);
        if (cfg.fixed_dt > 0.0) return cfg.fixed_dt;
        const double w = field_max_wavespeed(q, SystemKind::Euler2D, gas);
        return cfl_timestep(cfg.dt, std::min(g.dx, g.dy), w);
    };

    time_loop(cfg, state, rhs, {}, pick_dt, {}, res);

    if (res.exit_code == 0) {
        scatter(state);
        bc(q);
        if (vortex) {
            auto exact = [&](double x, double y) {
                return conserved(exact_primitive(cfg.kind, cfg.params, gas, x, y, res.final_time),
                                 gas, 2)[3];
            };
            res.l1 = l1_point_error(q, g, 3, exact);
        } else {
            res.pe_mass = pe_profile_xi(q, g, gas.gamma * cfg.params.mach / std::sqrt(2.0), gas);
            res.max_pe = max_value(res.pe_mass);
        }
    }

    if (emit) {
        prepare_output(cfg);
        scatter(state);
        const int jm = g.ny / 2;
        std::vector<std::vector<double>> cols(5);
        for (int i = 0; i < g.nx; ++i) {
            cols[0].push_back(g.x(i));
            for (int c = 0; c < 4; ++c) cols[1 + c].push_back(q.cell(i, jm)[c]);
        }
        add_csv(cfg, res, "midline.csv", "x,rho,momentum_x,momentum_y,energy",
                {&cols[0], &cols[1], &cols[2], &cols[3], &cols[4]});
        if (!res.pe_mass.x.empty())
            add_csv(cfg, res, "pe_xi.csv", "xi,pe_normal_mass_flux_percent",
                    {&res.pe_mass.x, &res.pe_mass.v});
    }
}

// -------------------------------------------------------------------- DG 1-D

void run_dg_1d(const CaseConfig& cfg, bool emit, RunResult& res) {
    const bool burgers = cfg.kind == CaseKind::BurgersSource;
    const bool nozzle = cfg.kind == CaseKind::Quasi1DNozzle;
    const bool viscous = cfg.kind == CaseKind::ViscousShock1D;
    const SystemKind sys = burgers ? SystemKind::Burgers : SystemKind::Euler1D;
    const int nc = burgers ? 1 : 3;
    DgScheme dsch = cfg.method.dg;
    const GasModel gas = cfg.gas;

    Grid1D g = Grid1D::over(cfg.xa, cfg.xb, cfg.cells);
    DgField1D q(g.n, dsch.N, nc), drv(g.n, dsch.N, nc), grad(g.n, dsch.N, nc);
    init_case(cfg.kind, cfg.params, g, gas, q);

    PrimitiveState inflow{};
    double p_back = 0.0;
    if (!burgers) {
        inflow = nozzle ? PrimitiveState{gas.gamma, cfg.params.mach, 0.0, 1.0}
                        : case_shock_states(cfg.kind, cfg.params, gas).upstream;
        p_back = resolved_back_pressure(cfg.kind, cfg.params, gas);
    }
    auto bc = [&](DgField1D& f) {
        if (burgers) {
            dg_burgers_bc(f, 2.0, 1.0);
        } else {
            dg_supersonic_inflow_bc(f, inflow, gas);
            dg_back_pressure_outflow_bc(f, p_back, gas);
        }
    };

    ViscousModel vm;
    vm.L = cfg.length_scale;

    std::vector<double> state = q.coef;
    auto scatter = [&](const std::vector<double>& s) {
        std::copy(s.begin(), s.end(), q.coef.begin());
    };

    auto rhs = [&](const std::vector<double>& s, std::vector<double>& out, int) {
        scatter(s);
        bc(q);
        dsch.flux.alpha = dg_max_wavespeed_1d(q, sys, gas);
        dg_residual_1d(q, g, sys, dsch, gas, drv);
        if (nozzle)
            dg_add_source_1d(q, g,
                             [&](double x, const double* qq, double* outp) {
                                 quasi1d_source_state(x, qq, gas, outp);
                             },
                             drv);
        if (burgers)
            dg_add_source_1d(q, g,
                             [](double x, const double* qq, double* outp) {
                                 outp[0] = burgers_source(x, qq[0]);
                             },
                             drv);
        if (viscous) {
            dg_gradient_1d(q, g, grad);
            dg_viscous_residual_1d(q, grad, g, vm, gas, drv);
        }
        out = drv.coef;
    };

    auto post = [&](std::vector<double>& s, int) {
        scatter(s);
        bc(q);
        dg_limit_1d(q, g, sys, gas, dsch.characteristic);
        std::copy(q.coef.begin(), q.coef.end(), s.begin());
    };

    Field1D means(g.n, 0, nc); // viscous dt cap works on element means
    auto pick_dt = [&]() {
        scatter(state);
        bc(q);
        if (cfg.fixed_dt > 0.0) return cfg.fixed_dt;
        DtSpec ds = cfg.dt;
        if (viscous) {
            for (int e = 0; e < g.n; ++e)
                for (int c = 0; c < nc; ++c)
                    means.cell(e)[c] = dg_mean_1d(q.elem(e), dsch.N, nc, c);
            ds.viscous_nu = max_diffusivity(means, vm, gas);
        }
        return cfl_timestep(ds, g.dx, dg_max_wavespeed_1d(q, sys, gas), dsch.N);
    };

    ShockSpec spec{cfg.params.mach, cfg.params.shock_speed, cfg.params.shock_position,
                   cfg.params.domain_length};
    auto after = [&](double t) {
        if (cfg.kind != CaseKind::MovingShock1D) return;
        scatter(state);
        res.cep_series.x.push_back(t);
        res.cep_series.v.push_back(cep(q, g, spec, gas));
    };

    time_loop(cfg, state, rhs, post, pick_dt, after, res);

    if (res.exit_code == 0) {
        scatter(state);
        bc(q);
        switch (cfg.kind) {
        case CaseKind::BurgersSource:
            res.l1 = l1_mean_error(q, g, 0, burgers_steady);
            break;
        case CaseKind::MovingShock1D:
            if (!res.cep_series.v.empty()) res.cep_final = res.cep_series.v.back();
            break;
        case CaseKind::Quasi1DNozzle:
            res.pe_mass = pe_profile_area(q, g, gas.gamma * cfg.params.mach, gas);
            res.max_pe = max_value(res.pe_mass);
            break;
        default: {
            const SteadyRefs r = steady_refs(inflow, gas);
            res.pe_mass = pe_profile(q, g, FluxQuantity::MassFlux, r.mass, gas);
            res.pe_momentum = pe_profile(q, g, FluxQuantity::MomentumFlux, r.momentum, gas);
            res.pe_energy = pe_profile(q, g, FluxQuantity::EnergyFlux, r.energy, gas);
            res.max_pe = max_value(res.pe_mass);
            break;
        }
        }
    }

    if (emit) {
        prepare_output(cfg);
        scatter(state);
        std::vector<std::vector<double>> cols(1 + nc);
        double val[4];
        for (int e = 0; e < g.n; ++e) {
            cols[0].push_back(g.x(e));
            dg_eval_1d(q.elem(e), dsch.N, nc, 0.0, val);
            for (int c = 0; c < nc; ++c) cols[1 + c].push_back(val[c]);
        }
        std::vector<const std::vector<double>*> ptrs;
        for (const auto& c : cols) ptrs.push_back(&c);
        add_csv(cfg, res, "solution.csv", burgers ? "x,u" : "x,rho,momentum,energy", ptrs);
        if (cfg.kind == CaseKind::MovingShock1D)
            add_csv(cfg, res, "cep.csv", "t,cep_percent", {&res.cep_series.x, &res.cep_series.v});
        else if (!res.pe_mass.x.empty() && !res.pe_momentum.x.empty())
            add_csv(cfg, res, "pe.csv",
                    "x,pe_mass_flux_percent,pe_momentum_flux_percent,pe_energy_flux_percent",
                    {&res.pe_mass.x, &res.pe_mass.v, &res.pe_momentum.v, &res.pe_energy.v});
        else if (!res.pe_mass.x.empty())
            add_csv(cfg, res, "pe.csv", "x,pe_area_mass_flux_percent",
                    {&res.pe_mass.x, &res.pe_mass.v});
    }
}

// -------------------------------------------------------------------- DG 2-D

void run_dg_2d(const CaseConfig& cfg, bool emit, RunResult& res) {
    const bool vortex = cfg.kind == CaseKind::IsentropicVortex;
    DgScheme dsch = cfg.method.dg;
    const GasModel gas = cfg.gas;

    Grid2D g = Grid2D::over(cfg.xa, cfg.xb, cfg.cells, cfg.ya, cfg.yb, cfg.cells_y);
    DgField2D q(g.nx, g.ny, dsch.N, 4), drv(g.nx, g.ny, dsch.N, 4);
    init_case(cfg.kind, cfg.params, g, gas, q);
    ObliquePair pair{};
    if (!vortex) pair = oblique_shock_states(cfg.params.mach, gas);

    auto bc = [&](DgField2D& f) {
        if (vortex)
            dg_periodic_bc_2d(f);
        else
            dg_oblique_shock_bc(f, pair, gas);
    };

    std::vector<double> state = q.coef;
    auto scatter = [&](const std::vector<double>& s) {
        std::copy(s.begin(), s.end(), q.coef.begin());
    };

    auto rhs = [&](const std::vector<double>& s, std::vector<double>& out, int) {
        scatter(s);
        bc(q);
        dsch.flux.alpha = dg_max_wavespeed_2d(q, SystemKind::Euler2D, gas);
        dg_residual_2d(q, g, SystemKind::Euler2D, dsch, gas, drv);
        out = drv.coef;
    };

    auto post = [&](std::vector<double>& s, int) {
        scatter(s);
        bc(q);
        dg_limit_2d(q, g, SystemKind::Euler2D, gas, dsch.characteristic);
        std::copy(q.coef.begin(), q.coef.end(), s.begin());
    };

    auto pick_dt = [&]() {
        scatter(state);
        bc(q);
        if (cfg.fixed_dt > 0.0) return cfg.fixed_dt;
        const double w = dg_max_wavespeed_2d(q, SystemKind::Euler2D, gas);
        return cfl_timestep(cfg.dt, std::min(g.dx, g.dy), w, dsch.N);
    };

    time_loop(cfg, state, rhs, post, pick_dt, {}, res);

    if (res.exit_code == 0) {
        scatter(state);
        bc(q);
        if (vortex) {
            auto exact = [&](double x, double y) {
                return conserved(exact_primitive(cfg.kind, cfg.params, gas, x, y, res.final_time),
                                 gas, 2)[3];
            };
            res.l1 = l1_mean_error(q, g, 3, exact);
        } else {
            res.pe_mass = pe_profile_xi(q, g, gas.gamma * cfg.params.mach / std::sqrt(2.0), gas);
            res.max_pe = max_value(res.pe_mass);
        }
    }

    if (emit) {
        prepare_output(cfg);
        scatter(state);
        const int jm = g.ny / 2;
        std::vector<std::vector<double>> cols(5);
        double val[4];
        for (int ex = 0; ex < g.nx; ++ex) {
            cols[0].push_back(g.x(ex));
            dg_eval_2d(q.elem(ex, jm), dsch.N, 4, 0.0, 0.0, val);
            for (int c = 0; c < 4; ++c) cols[1 + c].push_back(val[c]);
        }
        add_csv(cfg, res, "midline.csv", "x,rho,momentum_x,momentum_y,energy",
                {&cols[0], &cols[1], &cols[2], &cols[3], &cols[4]});
        if (!res.pe_mass.x.empty())
            add_csv(cfg, res, "pe_xi.csv", "xi,pe_normal_mass_flux_percent",
                    {&res.pe_mass.x, &res.pe_mass.v});
    }
}

// ------------------------------------------------------------------- overset

struct CompositeSampler1D {
    const OversetHierarchy* h = nullptr;
    const std::vector<Field1D>* fields = nullptr;

    int deepest_level(double x) const {
        int best = 0;
        for (int k = 1; k < h->depth(); ++k) {
            const Grid1D& g = h->levels[k].grid;
            const double a = g.x0 - 0.5 * g.dx;
            if (x >= a && x <= a + g.n * g.dx) best = k;
        }
        return best;
    }
    void sample(double x, double* out, int nc) const {
        const int k = deepest_level(x);
        const Grid1D& g = h->levels[k].grid;
        const Field1D& f = (*fields)[k];
        int i0 = static_cast<int>(std::floor((x - g.x0) / g.dx));
        i0 = std::clamp(i0, 0, g.n - 2);
        const double w = (x - g.x(i0)) / g.dx;
        for (int c = 0; c < nc; ++c)
            out[c] = (1.0 - w) * f.cell(i0)[c] + w * f.cell(i0 + 1)[c];
    }
};

// Max percentage error of A rho u over active cells downstream of the shock.
double downstream_pe(const OversetHierarchy& h, const std::vector<Series>& pe, double x_min) {
    double m = 0.0;
    for (int k = 0; k < h.depth(); ++k) {
        const bool finest = k + 1 >= h.depth();
        const int lo = finest ? 0 : h.levels[k + 1].parent_lo;
        const int hi = finest ? -1 : h.levels[k + 1].parent_hi;
        for (int i = 0; i < pe[k].size(); ++i) {
            if (!finest && i >= lo && i <= hi) continue;
            if (pe[k].x[i] > x_min) m = std::max(m, pe[k].v[i]);
        }
    }
    return m;
}

void run_overset_fd(const CaseConfig& cfg, bool emit, RunResult& res) {
    SpatialScheme sch = cfg.method.scheme;
    const int ng = scheme_ghost_width(sch);
    const GasModel gas = cfg.gas;
    const PrimitiveState inflow{gas.gamma, cfg.params.mach, 0.0, 1.0};
    const double p_back = resolved_back_pressure(cfg.kind, cfg.params, gas);
    const double ref = gas.gamma * cfg.params.mach;

    OversetHierarchy prev_h;
    std::vector<Field1D> prev_fields;

    for (int stage = 1; stage <= cfg.levels; ++stage) {
        OversetHierarchy h = build_hierarchy(overset_nozzle_specs(stage));
        const int depth = h.depth();
        std::vector<Field1D> qs, drs;
        std::vector<Field1D*> qp, rp;
        for (int k = 0; k < depth; ++k) {
            qs.emplace_back(h.levels[k].grid.n, ng, 3);
            drs.emplace_back(h.levels[k].grid.n, ng, 3);
        }
        for (int k = 0; k < depth; ++k) {
            qp.push_back(&qs[k]);
            rp.push_back(&drs[k]);
        }

        if (stage == 1) {
            init_case(CaseKind::Quasi1DNozzle, cfg.params, h.levels[0].grid, gas,
                      sch.finite_volume, qs[0]);
        } else {
            CompositeSampler1D donor{&prev_h, &prev_fields};
            for (int k = 0; k < depth; ++k) {
                const Grid1D& g = h.levels[k].grid;
                for (int i = 0; i < g.n; ++i) donor.sample(g.x(i), qs[k].cell(i), 3);
            }
        }

        std::vector<std::size_t> offset(depth + 1, 0);
        for (int k = 0; k < depth; ++k) offset[k + 1] = offset[k] + qs[k].data.size();
        std::vector<double> state(offset[depth]);
        auto gather = [&]() {
            for (int k = 0; k < depth; ++k)
                std::copy(qs[k].data.begin(), qs[k].data.end(), state.begin() + offset[k]);
        };
        auto scatter = [&](const std::vector<double>& s) {
            for (int k = 0; k < depth; ++k)
                std::copy(s.begin() + offset[k], s.begin() + offset[k + 1],
                          qs[k].data.begin());
        };
        gather();

        auto fill = [&]() {
            supersonic_inflow_bc(qs[0], inflow, gas, ng);
            back_pressure_outflow_bc(qs[0], p_back, gas, ng);
            exchange_fringe(h, qp, sch.r);
        };

        auto rhs = [&](const std::vector<double>& s, std::vector<double>& out, int) {
            scatter(s);
            fill();
            double wmax = 0.0;
            for (int k = 0; k < depth; ++k)
                wmax = std::max(wmax, field_max_wavespeed(qs[k], SystemKind::Euler1D, gas));
            sch.alpha = wmax;
            sch.flux.alpha = wmax;
            for (int k = 0; k < depth; ++k)
                std::fill(drs[k].data.begin(), drs[k].data.end(), 0.0);
            overset_flux_divergence(h, qp, SystemKind::Euler1D, sch, gas, rp);
            for (int k = 0; k < depth; ++k)
                add_quasi1d_source(qs[k], h.levels[k].grid, gas, drs[k]);
            out.resize(state.size());
            for (int k = 0; k < depth; ++k)
                std::copy(drs[k].data.begin(), drs[k].data.end(), out.begin() + offset[k]);
        };

        // Keep covered parent cells synced with injected fine data so the
        // steady detector tracks real motion, not stale values.
        auto post = [&](std::vector<double>& s, int) {
            scatter(s);
            fill();
            for (int k = 0; k < depth; ++k)
                std::copy(qs[k].data.begin(), qs[k].data.end(), s.begin() + offset[k]);
        };

        auto pick_dt = [&]() {
            scatter(state);
            fill();
            if (cfg.fixed_dt > 0.0) return cfg.fixed_dt;
            double dt = std::numeric_limits<double>::max();
            for (int k = 0; k < depth; ++k) {
                const double w = field_max_wavespeed(qs[k], SystemKind::Euler1D, gas);
                dt = std::min(dt, cfl_timestep(cfg.dt, h.levels[k].grid.dx, w));
            }
            return dt;
        };

        RunResult stage_res;
        time_loop(cfg, state, rhs, post, pick_dt, {}, stage_res);
        res.steps += stage_res.steps;
        res.wall_seconds += stage_res.wall_seconds;
        res.final_time = stage_res.final_time;
        res.termination = stage_res.termination;
        res.steady_residual = stage_res.steady_residual;
        if (stage_res.exit_code != 0) {
            res.exit_code = stage_res.exit_code;
            res.failure_detail = stage_res.failure_detail;
            break;
        }

        scatter(state);
        fill();
        std::vector<Series> pe(depth);
        for (int k = 0; k < depth; ++k)
            pe[k] = pe_profile_area(qs[k], h.levels[k].grid, ref, gas);
        res.cascade_pe.push_back(downstream_pe(h, pe, 0.55));

        if (stage == cfg.levels) {
            res.pe_mass = pe[0];
            res.max_pe = res.cascade_pe.back();
            if (emit) {
                prepare_output(cfg);
                for (int k = 0; k < depth; ++k)
                    add_csv(cfg, res, "pe_level" + std::to_string(k) + ".csv",
                            "x,pe_area_mass_flux_percent", {&pe[k].x, &pe[k].v});
                std::vector<double> idx;
                for (std::size_t k = 0; k < res.cascade_pe.size(); ++k)
                    idx.push_back(static_cast<double>(k + 1));
                add_csv(cfg, res, "cascade.csv", "components,downstream_max_pe_percent",
                        {&idx, &res.cascade_pe});
            }
        }
        prev_h = h;
        prev_fields = std::move(qs);
    }
}

void run_overset_dg(const CaseConfig& cfg, bool emit, RunResult& res) {
    DgScheme dsch = cfg.method.dg;
    const GasModel gas = cfg.gas;
    const PrimitiveState inflow{gas.gamma, cfg.params.mach, 0.0, 1.0};
    const double p_back = resolved_back_pressure(cfg.kind, cfg.params, gas);
    const double ref = gas.gamma * cfg.params.mach;

    OversetHierarchy prev_h;
    std::vector<DgField1D> prev_fields;

    for (int stage = 1; stage <= cfg.levels; ++stage) {
        OversetHierarchy h = build_hierarchy(overset_nozzle_specs(stage));
        const int depth = h.depth();
        std::vector<DgField1D> qs, drs;
        std::vector<DgField1D*> qp;
        for (int k = 0; k < depth; ++k) {
            qs.emplace_back(h.levels[k].grid.n, dsch.N, 3);
            drs.emplace_back(h.levels[k].grid.n, dsch.N, 3);
        }
        for (int k = 0; k < depth; ++k) qp.push_back(&qs[k]);

        if (stage == 1) {
            init_case(CaseKind::Quasi1DNozzle, cfg.params, h.levels[0].grid, gas, qs[0]);
        } else {
            for (int k = 0; k < depth; ++k) {
                const Grid1D& g = h.levels[k].grid;
                auto donor = [&](double x, double* out) {
                    int lvl = 0;
                    for (int j = 1; j < prev_h.depth(); ++j) {
                        const Grid1D& pg = prev_h.levels[j].grid;
                        const double a = pg.x0 - 0.5 * pg.dx;
                        if (x >= a && x <= a + pg.n * pg.dx) lvl = j;
                    }
                    const Grid1D& pg = prev_h.levels[lvl].grid;
                    int e = static_cast<int>(std::floor((x - (pg.x0 - 0.5 * pg.dx)) / pg.dx));
                    e = std::clamp(e, 0, pg.n - 1);
                    const double r = 2.0 * (x - pg.x(e)) / pg.dx;
                    dg_eval_1d(prev_fields[lvl].elem(e), prev_fields[lvl].N, 3, r, out);
                };
                dg_project_1d(g, 3, donor, qs[k]);
            }
        }

        std::vector<std::size_t> offset(depth + 1, 0);
        for (int k = 0; k < depth; ++k) offset[k + 1] = offset[k] + qs[k].coef.size();
        std::vector<double> state(offset[depth]);
        auto gather = [&]() {
            for (int k = 0; k < depth; ++k)
                std::copy(qs[k].coef.begin(), qs[k].coef.end(), state.begin() + offset[k]);
        };
        auto scatter = [&](const std::vector<double>& s) {
            for (int k = 0; k < depth; ++k)
                std::copy(s.begin() + offset[k], s.begin() + offset[k + 1],
                          qs[k].coef.begin());
        };
        gather();

        auto fill = [&]() {
            dg_supersonic_inflow_bc(qs[0], inflow, gas);
            dg_back_pressure_outflow_bc(qs[0], p_back, gas);
            dg_exchange(h, qp);
        };

        auto rhs = [&](const std::vector<double>& s, std::vector<double>& out, int) {
            scatter(s);
            fill();
            double wmax = 0.0;
            for (int k = 0; k < depth; ++k)
                wmax = std::max(wmax, dg_max_wavespeed_1d(qs[k], SystemKind::Euler1D, gas));
            dsch.flux.alpha = wmax;
            for (int k = 0; k < depth; ++k) {
                dg_residual_1d(qs[k], h.levels[k].grid, SystemKind::Euler1D, dsch, gas, drs[k]);
                dg_add_source_1d(qs[k], h.levels[k].grid,
                                 [&](double x, const double* qq, double* outp) {
                                     quasi1d_source_state(x, qq, gas, outp);
                                 },
                                 drs[k]);
            }
            out.resize(state.size());
            for (int k = 0; k < depth; ++k)
                std::copy(drs[k].coef.begin(), drs[k].coef.end(), out.begin() + offset[k]);
        };

        auto post = [&](std::vector<double>& s, int) {
            scatter(s);
            fill();
            for (int k = 0; k < depth; ++k)
                dg_limit_1d(qs[k], h.levels[k].grid, SystemKind::Euler1D, gas,
                            dsch.characteristic);
            for (int k = 0; k < depth; ++k)
                std::copy(qs[k].coef.begin(), qs[k].coef.end(), s.begin() + offset[k]);
        };

        auto pick_dt = [&]() {
            scatter(state);
            fill();
            if (cfg.fixed_dt > 0.0) return cfg.fixed_dt;
            double dt = std::numeric_limits<double>::max();
            for (int k = 0; k < depth; ++k) {
                const double w = dg_max_wavespeed_1d(qs[k], SystemKind::Euler1D, gas);
                dt = std::min(dt, cfl_timestep(cfg.dt, h.levels[k].grid.dx, w, dsch.N));
            }
            return dt;
        };

        RunResult stage_res;
        time_loop(cfg, state, rhs, post, pick_dt, {}, stage_res);
        res.steps += stage_res.steps;
        res.wall_seconds += stage_res.wall_seconds;
        res.final_time = stage_res.final_time;
        res.termination = stage_res.termination;
        res.steady_residual = stage_res.steady_residual;
        if (stage_res.exit_code != 0) {
            res.exit_code = stage_res.exit_code;
            res.failure_detail = stage_res.failure_detail;
            break;
        }

        scatter(state);
        fill();
        std::vector<Series> pe(depth);
        for (int k = 0; k < depth; ++k)
            pe[k] = pe_profile_area(qs[k], h.levels[k].grid, ref, gas);
        res.cascade_pe.push_back(downstream_pe(h, pe, 0.55));

        if (stage == cfg.levels) {
            res.pe_mass = pe[0];
            res.max_pe = res.cascade_pe.back();
            if (emit) {
                prepare_output(cfg);
                for (int k = 0; k < depth; ++k)
                    add_csv(cfg, res, "pe_level" + std::to_string(k) + ".csv",
                            "x,pe_area_mass_flux_percent", {&pe[k].x, &pe[k].v});
                std::vector<double> idx;
                for (std::size_t k = 0; k < res.cascade_pe.size(); ++k)
                    idx.push_back(static_cast<double>(k + 1));
                add_csv(cfg, res, "cascade.csv", "components,downstream_max_pe_percent",
                        {&idx, &res.cascade_pe});
            }
        }
        prev_h = h;
        prev_fields = std::move(qs);
    }
}

} // namespace

RunResult run_case(const CaseConfig& cfg, bool emit_files) {
    RunResult res;
    if (cfg.kind == CaseKind::OversetNozzle) {
        if (cfg.method.is_dg())
            run_overset_dg(cfg, emit_files, res);
        else
            run_overset_fd(cfg, emit_files, res);
    } else if (cfg.two_dimensional()) {
        if (cfg.method.is_dg())
            run_dg_2d(cfg, emit_files, res);
        else
            run_fd_2d(cfg, emit_files, res);
    } else {
        if (cfg.method.is_dg())
            run_dg_1d(cfg, emit_files, res);
        else
            run_fd_1d(cfg, emit_files, res);
    }
    fill_report(cfg, res);
    if (emit_files) {
        prepare_output(cfg);
        write_manifest(cfg, res);
    }
    return res;
}

std::vector<OrderRow> convergence_study(const CaseConfig& base, const std::vector<int>& meshes) {
    std::vector<std::pair<double, double>> runs;
    for (int m : meshes) {
        CaseConfig c = base;
        c.cells = m;
        if (c.two_dimensional())
            c.cells_y = static_cast<int>(std::lround(m * (c.yb - c.ya) / (c.xb - c.xa)));
        RunResult r = run_case(c, false);
        if (r.exit_code != 0)
            throw NonPhysicalState("convergence run at " + std::to_string(m) +
                                   " cells failed: " + r.failure_detail);
        runs.emplace_back((c.xb - c.xa) / m, r.l1);
    }
    return l1_error_and_order(runs);
}

} // namespace shocklab
