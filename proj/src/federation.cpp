#include "fedsat/federation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fedsat {
namespace fed {

namespace {

QosDelta make_delta(const scn::Scenario& scenario, const fom::FigureOfMeritReport& before,
                    const fom::FigureOfMeritReport& after) {
    QosDelta d;
    for (const auto& dcp : scenario.dcps) {
        QosDelta::PerDcp p;
        if (auto it = before.per_dcp.find(dcp.id); it != before.per_dcp.end()) {
            p.coverage_before = it->second.temporal_coverage_fraction;
            p.max_revisit_before_s = it->second.max_revisit_s;
        }
        const auto& a = after.per_dcp.at(dcp.id);
        p.coverage_after = a.temporal_coverage_fraction;
        p.max_revisit_after_s = a.max_revisit_s;
        d.per_dcp.emplace(dcp.id, p);
    }
    d.federation_coverage_before = before.federation.dcp_coverage_fraction;
    d.federation_coverage_after = after.federation.dcp_coverage_fraction;
    return d;
}

/// Offered-value rules checked against the candidate alone.
std::vector<fom::ComplianceResult> offered_value_rules(const scn::Satellite& sat,
                                                       const scn::Thresholds& t) {
    std::vector<fom::ComplianceResult> out;
    if (sat.access_mode == scn::AccessMode::StoreAndForward)
        out.push_back({"min_storage", sat.id, t.min_storage_bytes, sat.storage_capacity_bytes,
                       "bytes", sat.storage_capacity_bytes >= t.min_storage_bytes});
    out.push_back({"max_peak_power", sat.id, t.max_peak_power_w, sat.peak_power_w, "W",
                   sat.peak_power_w <= t.max_peak_power_w});
    if (!sat.dedicated)
        out.push_back({"min_engagement", sat.id, t.min_engagement_fraction,
                       sat.engagement_fraction, "fraction",
                       sat.engagement_fraction >= t.min_engagement_fraction});
    return out;
}

} // namespace

AdmissionDecision evaluate_candidate(const scn::Scenario& scenario,
                                     const scn::Satellite& candidate) {
    if (scenario.find_satellite(candidate.id))
        throw std::invalid_argument("candidate id \"" + candidate.id +
                                    "\" already in the federation");

    scn::Scenario admitted = scenario;
    admitted.satellites.push_back(candidate);
    if (auto violations = scn::validate_scenario(admitted); !violations.empty())
        throw scn::ValidationError("candidate \"" + candidate.id + "\" violates invariants: " +
                                       violations.front().rule,
                                   std::move(violations));

    const fom::Evaluation before = fom::evaluate(scenario);
    const fom::Evaluation after = fom::evaluate(admitted);

    AdmissionDecision decision;
    decision.candidate_id = candidate.id;
    for (const auto& rule : offered_value_rules(candidate, scenario.thresholds))
        if (!rule.pass) decision.failed_rules.push_back(rule);
    for (const auto& rule : after.compliance) {
        if (rule.pass) continue;
        const bool dup = std::any_of(decision.failed_rules.begin(), decision.failed_rules.end(),
                                     [&](const fom::ComplianceResult& r) {
                                         return r.rule == rule.rule && r.subject == rule.subject;
                                     });
        if (!dup) decision.failed_rules.push_back(rule);
    }
    decision.accepted = decision.failed_rules.empty();
    decision.qos_delta = make_delta(scenario, before.report, after.report);
    return decision;
}

RetirementPlan retire_minimal_impact(const scn::Scenario& scenario) {
    if (scenario.satellites.size() < 2)
        throw std::invalid_argument("retirement needs at least 2 satellites");

    const fom::Evaluation before = fom::evaluate(scenario);

    std::vector<std::string> ids;
    for (const auto& sat : scenario.satellites) ids.push_back(sat.id);
    std::sort(ids.begin(), ids.end());

    RetirementPlan best;
    double best_coverage = -1.0;
    double best_loss = 0.0;
    for (const auto& id : ids) {
        scn::Scenario reduced = scenario;
        reduced.satellites.erase(
            std::remove_if(reduced.satellites.begin(), reduced.satellites.end(),
                           [&](const scn::Satellite& s) { return s.id == id; }),
            reduced.satellites.end());

        const fom::Evaluation after = fom::evaluate(reduced);
        const double coverage = after.report.federation.dcp_coverage_fraction;
        double loss = 0.0;
        for (const auto& dcp : scenario.dcps)
            loss += before.report.per_dcp.at(dcp.id).temporal_coverage_fraction -
                    after.report.per_dcp.at(dcp.id).temporal_coverage_fraction;

        // ids ascend, so strict comparisons keep the smallest id on ties
        if (coverage > best_coverage ||
            (coverage == best_coverage && loss < best_loss)) {
            best_coverage = coverage;
            best_loss = loss;
            best.removed_id = id;
            best.post_metrics = after.report;
            best.still_compliant = after.all_pass;
        }
    }
    return best;
}

ReconfigurationResult reconfigure_on_fault(const scn::Scenario& scenario,
                                           const std::string& failed_id, double fault_time_s) {
    if (!scenario.find_satellite(failed_id))
        throw std::invalid_argument("unknown satellite id \"" + failed_id + "\"");
    const double step = scenario.grid.step_s;
    if (fault_time_s < 0.0 || fault_time_s > scenario.grid.end_s ||
        std::fabs(fault_time_s / step - std::round(fault_time_s / step)) > 1e-9)
        throw std::invalid_argument("fault time is not a grid instant");

    const double period = scenario.thresholds.planning_period_s;
    const double boundary = (std::floor(fault_time_s / period) + 1.0) * period;
    const fom::EvalSpan span{boundary, scenario.grid.end_s};

    std::vector<std::string> survivors;
    std::vector<std::string> tunable; // non-dedicated survivors, scenario order
    for (const auto& sat : scenario.satellites) {
        if (sat.id == failed_id) continue;
        survivors.push_back(sat.id);
        if (!sat.dedicated) tunable.push_back(sat.id);
    }

    ReconfigurationResult best;
    best.failed_id = failed_id;
    best.fault_time_s = fault_time_s;
    best.surviving_ids = survivors;
    best.plan_effective_from_s = boundary;

    double best_coverage = -1.0;
    double best_total = -1.0;
    std::vector<std::size_t> counters(tunable.size(), 0);
    while (true) {
        access::AccessOptions options;
        options.overrides[failed_id].inactive_from_s = fault_time_s;
        std::map<std::string, double> phases;
        for (std::size_t i = 0; i < tunable.size(); ++i) {
            const double phase = static_cast<double>(counters[i]) * period / 8.0;
            phases[tunable[i]] = phase;
            auto& ov = options.overrides[tunable[i]];
            ov.duty_phase_s = phase;
            ov.phase_from_s = boundary;
        }

        const fom::Evaluation ev = fom::evaluate(scenario, options, span);
        ++best.search_cost;

        const double coverage = ev.report.federation.dcp_coverage_fraction;
        double total = 0.0;
        for (const auto& [id, f] : ev.report.per_dcp) total += f.temporal_coverage_fraction;

        // lexicographic enumeration + strict improvement = smallest plan wins ties
        if (coverage > best_coverage ||
            (coverage == best_coverage && total > best_total)) {
            best_coverage = coverage;
            best_total = total;
            best.duty_phase_s = phases;
            best.objective_coverage_fraction = coverage;
            bool all_pass = true;
            for (const auto& rule : ev.compliance)
                if (rule.subject != failed_id && !rule.pass) all_pass = false;
            best.compliant_after = all_pass;
        }

        // odometer over phase indices, first satellite most significant
        std::size_t pos = tunable.size();
        while (pos > 0) {
            if (++counters[pos - 1] < 8) break;
            counters[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
    }
    return best;
}

} // namespace fed
} // namespace fedsat
