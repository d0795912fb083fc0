#pragma once

#include <limits>
#include <string>
#include <vector>

#include "shocklab/case_config.hpp"
#include "shocklab/diagnostics.hpp"

namespace shocklab {

struct RunResult {
    int exit_code = 0;          // 0 completed, 2 stopped on a non-physical state
    std::string termination;    // end_time | steady | max_steps | nonphysical
    std::string failure_detail; // set for nonphysical stops
    double final_time = 0.0;
    long steps = 0;
    double steady_residual = std::numeric_limits<double>::quiet_NaN();
    double wall_seconds = 0.0;
    std::vector<std::string> emitted;

    Series cep_series;                      // moving-shock cases, one entry per step
    Series pe_mass, pe_momentum, pe_energy; // steady-shock percentage errors
    std::vector<double> cascade_pe;         // overset: downstream max PE per component count
    double l1 = std::numeric_limits<double>::quiet_NaN(); // vs exact when one exists
    double max_pe = std::numeric_limits<double>::quiet_NaN();
    double cep_final = std::numeric_limits<double>::quiet_NaN();
    DiagnosticsReport report;
};

// Execute one case end to end: init, time loop with ghost fills / limiting /
// fringe exchange, diagnostics, optional CSV + manifest emission. Config
// problems throw ConfigError; a NonPhysicalState is recorded in the result.
RunResult run_case(const CaseConfig& cfg, bool emit_files = true);

// Re-run the case over several mesh sizes and tabulate L1 errors and orders.
std::vector<OrderRow> convergence_study(const CaseConfig& base, const std::vector<int>& meshes);

} // namespace shocklab
