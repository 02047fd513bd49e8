#pragma once

#include "fedsat/access.hpp"

namespace fedsat {
namespace fom {

/// Evaluation interval; defaults to the whole grid. Federation what-if
/// runs score sub-horizons (e.g. from a planning-period boundary on).
struct EvalSpan {
    double from_s = 0.0;
    double to_s = 0.0; // 0 means "grid end"
};

struct DcpFom {
    double temporal_coverage_fraction = 0.0;
    /// Largest service gap, leading/trailing gaps included; infinity
    /// when the DCP is never accessed.
    double max_revisit_s = 0.0;
    /// max_revisit_s within the federation-level revisit bound
    /// (thresholds.max_revisit_s); feeds dcp_coverage_fraction.
    bool revisit_ok = false;
};

struct SatelliteFom {
    double ground_access_s_per_day = 0.0;
    double engagement_fraction = 0.0; // offered value, echoed
    bool downlink_sufficient = false;
    double storage_peak_bytes = 0.0;
};

struct FederationFom {
    double dcp_coverage_fraction = 0.0; // share of DCPs with revisit_ok
    int dedicated_ground_stations = 0;
};

struct FigureOfMeritReport {
    std::map<std::string, DcpFom> per_dcp;
    std::map<std::string, SatelliteFom> per_satellite;
    FederationFom federation;
};

/// One admission/compliance rule outcome. pass is observed-vs-threshold
/// under the rule's direction.
struct ComplianceResult {
    std::string rule;
    std::string subject;
    double threshold = 0.0;
    double observed = 0.0;
    std::string unit;
    bool pass = false;
};

struct RevisitStats {
    std::vector<double> gaps_s; // positive gaps only
    double max_revisit_s = 0.0; // infinity when never accessed
};

/// Fraction of grid instants in the span where at least one satellite
/// accesses the DCP (union over satellites). Throws on unknown dcp_id.
double temporal_coverage(const std::vector<access::AccessWindow>& windows,
                         const std::string& dcp_id, const scn::Scenario& scenario,
                         const EvalSpan& span = {});

/// Service gaps for one DCP: between consecutive union windows, plus
/// the leading and trailing gaps against the span edges.
RevisitStats revisit_times(const std::vector<access::AccessWindow>& windows,
                           const std::string& dcp_id, const scn::Scenario& scenario,
                           const EvalSpan& span = {});

/// Total ground-contact seconds per simulated day for one satellite.
double ground_access_per_day(const std::vector<access::AccessWindow>& windows,
                             const std::string& satellite_id, const scn::Scenario& scenario,
                             const EvalSpan& span = {});

/// Assemble the full report from one access evaluation.
FigureOfMeritReport compute_report(const scn::Scenario& scenario,
                                   const access::AccessResult& access,
                                   const EvalSpan& span = {});

/// The eight-rule threshold check of the federation admission list.
std::vector<ComplianceResult> check_compliance(const FigureOfMeritReport& report,
                                               const scn::Thresholds& thresholds,
                                               const scn::Scenario& scenario);

/// Full pipeline: access CSP -> report -> compliance.
struct Evaluation {
    access::AccessResult access;
    FigureOfMeritReport report;
    std::vector<ComplianceResult> compliance;
    bool all_pass = false;
};

Evaluation evaluate(const scn::Scenario& scenario, const access::AccessOptions& options = {},
                    const EvalSpan& span = {});

} // namespace fom
} // namespace fedsat
