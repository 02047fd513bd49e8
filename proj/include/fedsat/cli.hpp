#pragma once

#include <optional>
#include <string>

namespace fedsat {
namespace cli {

struct SimulateOptions {
    std::string scenario_path;
    std::string out_dir = "out";
    std::optional<double> step_s;    // overrides grid.step_s
    std::optional<double> horizon_s; // overrides grid.end_s
    std::string format = "json";     // "csv" additionally writes the FOM tables
};

/// Full pipeline; writes windows CSV + metrics JSON under out_dir and a
/// RunReport JSON to stdout. Exit 0 all rules pass, 1 some rule fails,
/// 2 input/validation error.
int run_simulate(const SimulateOptions& options);

/// Admission what-if; AdmissionDecision JSON on stdout.
/// Exit 0 accepted, 1 rejected, 2 error.
int run_admit(const std::string& scenario_path, const std::string& candidate_path);

/// Minimal-impact retirement; RetirementPlan JSON on stdout.
/// Exit 0 still compliant, 1 not, 2 error.
int run_retire(const std::string& scenario_path);

/// Fault reconfiguration; ReconfigurationResult JSON on stdout.
/// Exit 0 compliant after, 1 not, 2 error.
int run_fault(const std::string& scenario_path, const std::string& failed_id,
              double fault_time_s);

/// Side-by-side per-DCP coverage/revisit with deltas; exit 0 on
/// success, 2 when either input fails to load.
int run_compare(const std::string& scenario_a, const std::string& scenario_b);

/// Parse + validate only; violations as JSON on stdout. Exit 0 valid, 2 not.
int run_validate(const std::string& scenario_path);

} // namespace cli
} // namespace fedsat
