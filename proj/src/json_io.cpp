#include "fedsat/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace fedsat {
namespace io {

namespace {

using nlohmann::ordered_json;

ordered_json finite_or_null(double v) {
    if (std::isinf(v) || std::isnan(v)) return nullptr;
    return v;
}

ordered_json report_to_json(const fom::FigureOfMeritReport& report) {
    ordered_json per_dcp = ordered_json::object();
    for (const auto& [id, f] : report.per_dcp)
        per_dcp[id] = {{"temporal_coverage_fraction", f.temporal_coverage_fraction},
                       {"max_revisit_s", finite_or_null(f.max_revisit_s)},
                       {"revisit_ok", f.revisit_ok}};
    ordered_json per_sat = ordered_json::object();
    for (const auto& [id, f] : report.per_satellite)
        per_sat[id] = {{"ground_access_s_per_day", f.ground_access_s_per_day},
                       {"engagement_fraction", f.engagement_fraction},
                       {"downlink_sufficient", f.downlink_sufficient},
                       {"storage_peak_bytes", f.storage_peak_bytes}};
    return {{"per_dcp", per_dcp},
            {"per_satellite", per_sat},
            {"federation",
             {{"dcp_coverage_fraction", report.federation.dcp_coverage_fraction},
              {"dedicated_ground_stations", report.federation.dedicated_ground_stations}}}};
}

ordered_json compliance_to_json(const std::vector<fom::ComplianceResult>& compliance) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : compliance)
        rows.push_back({{"rule", r.rule},
                        {"subject", r.subject},
                        {"threshold", finite_or_null(r.threshold)},
                        {"observed", finite_or_null(r.observed)},
                        {"unit", r.unit},
                        {"pass", r.pass}});
    return rows;
}

} // namespace

std::string report_json(const fom::FigureOfMeritReport& report,
                        const std::vector<fom::ComplianceResult>& compliance) {
    ordered_json j = report_to_json(report);
    j["compliance"] = compliance_to_json(compliance);
    return j.dump(2) + "\n";
}

std::string per_dcp_csv(const fom::FigureOfMeritReport& report) {
    std::string out = "dcp_id,temporal_coverage_fraction,max_revisit_s,revisit_ok\n";
    char line[256];
    for (const auto& [id, f] : report.per_dcp) {
        if (std::isinf(f.max_revisit_s))
            std::snprintf(line, sizeof(line), "%s,%.6f,inf,%d\n", id.c_str(),
                          f.temporal_coverage_fraction, f.revisit_ok ? 1 : 0);
        else
            std::snprintf(line, sizeof(line), "%s,%.6f,%.3f,%d\n", id.c_str(),
                          f.temporal_coverage_fraction, f.max_revisit_s, f.revisit_ok ? 1 : 0);
        out += line;
    }
    return out;
}

std::string per_satellite_csv(const fom::FigureOfMeritReport& report) {
    std::string out =
        "satellite_id,ground_access_s_per_day,engagement_fraction,downlink_sufficient,"
        "storage_peak_bytes\n";
    char line[256];
    for (const auto& [id, f] : report.per_satellite) {
        std::snprintf(line, sizeof(line), "%s,%.3f,%.6f,%d,%.0f\n", id.c_str(),
                      f.ground_access_s_per_day, f.engagement_fraction,
                      f.downlink_sufficient ? 1 : 0, f.storage_peak_bytes);
        out += line;
    }
    return out;
}

std::string admission_json(const fed::AdmissionDecision& decision) {
    ordered_json per_dcp = ordered_json::object();
    for (const auto& [id, d] : decision.qos_delta.per_dcp) {
        const bool finite_revisit =
            !std::isinf(d.max_revisit_before_s) && !std::isinf(d.max_revisit_after_s);
        per_dcp[id] = {
            {"coverage_before", d.coverage_before},
            {"coverage_after", d.coverage_after},
            {"coverage_delta", d.coverage_after - d.coverage_before},
            {"max_revisit_before_s", finite_or_null(d.max_revisit_before_s)},
            {"max_revisit_after_s", finite_or_null(d.max_revisit_after_s)},
            {"max_revisit_delta_s",
             finite_revisit ? ordered_json(d.max_revisit_after_s - d.max_revisit_before_s)
                            : ordered_json(nullptr)},
        };
    }
    ordered_json j{
        {"candidate_id", decision.candidate_id},
        {"accepted", decision.accepted},
        {"failed_rules", compliance_to_json(decision.failed_rules)},
        {"qos_delta",
         {{"per_dcp", per_dcp},
          {"federation_coverage_before", decision.qos_delta.federation_coverage_before},
          {"federation_coverage_after", decision.qos_delta.federation_coverage_after},
          {"federation_coverage_delta", decision.qos_delta.federation_coverage_after -
                                            decision.qos_delta.federation_coverage_before}}}};
    return j.dump(2) + "\n";
}

std::string retirement_json(const fed::RetirementPlan& plan) {
    ordered_json j{{"removed_id", plan.removed_id},
                   {"still_compliant", plan.still_compliant},
                   {"post_metrics", report_to_json(plan.post_metrics)}};
    return j.dump(2) + "\n";
}

std::string reconfiguration_json(const fed::ReconfigurationResult& result) {
    ordered_json phases = ordered_json::object();
    for (const auto& [id, phase] : result.duty_phase_s) phases[id] = phase;
    ordered_json j{{"failed_id", result.failed_id},
                   {"fault_time_s", result.fault_time_s},
                   {"plan",
                    {{"surviving_ids", result.surviving_ids},
                     {"duty_phase_s", phases},
                     {"effective_from_s", result.plan_effective_from_s}}},
                   {"compliant_after", result.compliant_after},
                   {"objective_coverage_fraction", result.objective_coverage_fraction},
                   {"search_cost", result.search_cost}};
    return j.dump(2) + "\n";
}

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace io
} // namespace fedsat
