#pragma once

#include "fedsat/metrics.hpp"

namespace fedsat {
namespace fed {

/// Before/after figures for one admission or retirement what-if.
/// Revisit values may be infinite (DCP never accessed).
struct QosDelta {
    struct PerDcp {
        double coverage_before = 0.0;
        double coverage_after = 0.0;
        double max_revisit_before_s = 0.0;
        double max_revisit_after_s = 0.0;
    };
    std::map<std::string, PerDcp> per_dcp;
    double federation_coverage_before = 0.0;
    double federation_coverage_after = 0.0;
};

struct AdmissionDecision {
    std::string candidate_id;
    bool accepted = false;
    /// Offered-value rules the candidate fails plus federation rules
    /// failing after admission; empty iff accepted.
    std::vector<fom::ComplianceResult> failed_rules;
    QosDelta qos_delta;
};

struct RetirementPlan {
    std::string removed_id;
    fom::FigureOfMeritReport post_metrics;
    bool still_compliant = false;
};

struct ReconfigurationResult {
    std::string failed_id;
    double fault_time_s = 0.0;
    /// New operating plan, in force from plan_effective_from_s (the
    /// next planning-period boundary after the fault).
    std::vector<std::string> surviving_ids;
    std::map<std::string, double> duty_phase_s; // non-dedicated survivors
    double plan_effective_from_s = 0.0;
    bool compliant_after = false;
    std::size_t search_cost = 0; // configurations evaluated
    double objective_coverage_fraction = 0.0;
};

/**
 * Admission check for one candidate satellite: offered values against
 * the thresholds, then the full pipeline on scenario+candidate.
 * Accepted iff no rule fails either way. Throws on duplicate id.
 */
AdmissionDecision evaluate_candidate(const scn::Scenario& scenario,
                                     const scn::Satellite& candidate);

/**
 * Exhaustively evaluates removing each satellite and returns the
 * removal that maximizes the remaining federation dcp_coverage_fraction,
 * tie-broken by smaller total temporal-coverage loss, then by
 * lexicographically smaller id. Throws with fewer than 2 satellites.
 */
RetirementPlan retire_minimal_impact(const scn::Scenario& scenario);

/**
 * Fault recovery as constraint optimization: the failed satellite
 * provides no access from fault_time_s on; the duty-cycle phases of the
 * surviving non-dedicated satellites are searched exhaustively over
 * multiples of planning_period/8 to maximize federation
 * dcp_coverage_fraction from the next planning-period boundary.
 */
ReconfigurationResult reconfigure_on_fault(const scn::Scenario& scenario,
                                           const std::string& failed_id, double fault_time_s);

} // namespace fed
} // namespace fedsat
