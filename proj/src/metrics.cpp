#include "fedsat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fedsat {
namespace fom {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

EvalSpan resolve(const EvalSpan& span, const scn::TimeGrid& grid) {
    EvalSpan out = span;
    if (out.to_s <= 0.0) out.to_s = grid.end_s;
    out.from_s = std::max(0.0, out.from_s);
    out.to_s = std::min(out.to_s, grid.end_s);
    return out;
}

bool is_dcp_access(const access::AccessWindow& w) {
    return w.kind != access::WindowKind::GroundContact;
}

/// Union of one DCP's windows clipped to the span, merged and sorted.
/// A window that only touches span.to_s survives as a zero-length
/// interval so the trailing revisit gap stays zero.
std::vector<std::pair<double, double>> union_intervals(
    const std::vector<access::AccessWindow>& windows, const std::string& dcp_id,
    const EvalSpan& span) {
    std::vector<std::pair<double, double>> iv;
    for (const auto& w : windows) {
        if (!is_dcp_access(w) || w.target_id != dcp_id) continue;
        if (w.start_s > span.to_s || w.end_s <= span.from_s) continue;
        const double lo = std::max(w.start_s, span.from_s);
        const double hi = std::min(w.end_s, span.to_s);
        if (lo <= hi) iv.emplace_back(lo, hi);
    }
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& [lo, hi] : iv) {
        if (!merged.empty() && lo <= merged.back().second)
            merged.back().second = std::max(merged.back().second, hi);
        else
            merged.emplace_back(lo, hi);
    }
    return merged;
}

void require_dcp(const scn::Scenario& scenario, const std::string& dcp_id) {
    if (!scenario.find_dcp(dcp_id))
        throw std::invalid_argument("unknown DCP id \"" + dcp_id + "\"");
}

} // namespace

double temporal_coverage(const std::vector<access::AccessWindow>& windows,
                         const std::string& dcp_id, const scn::Scenario& scenario,
                         const EvalSpan& span_in) {
    require_dcp(scenario, dcp_id);
    const EvalSpan span = resolve(span_in, scenario.grid);

    const double step = scenario.grid.step_s;
    const std::size_t i_lo = static_cast<std::size_t>(std::ceil(span.from_s / step - 1e-9));
    const std::size_t i_hi = static_cast<std::size_t>(std::floor(span.to_s / step + 1e-9));
    if (i_hi < i_lo || span.to_s < span.from_s) return 0.0;
    const std::size_t total = i_hi - i_lo + 1;

    // instants, not clipped intervals: a window reaching past span.to_s
    // still covers the final instant
    std::vector<std::uint8_t> hit(total, 0);
    for (const auto& w : windows) {
        if (!is_dcp_access(w) || w.target_id != dcp_id) continue;
        std::size_t a = static_cast<std::size_t>(std::ceil(w.start_s / step - 1e-9));
        std::size_t b_excl = static_cast<std::size_t>(std::ceil(w.end_s / step - 1e-9));
        a = std::max(a, i_lo);
        b_excl = std::min(b_excl, i_hi + 1);
        for (std::size_t i = a; i < b_excl; ++i) hit[i - i_lo] = 1;
    }
    std::size_t covered = 0;
    for (std::uint8_t h : hit) covered += h;
    return static_cast<double>(covered) / static_cast<double>(total);
}

RevisitStats revisit_times(const std::vector<access::AccessWindow>& windows,
                           const std::string& dcp_id, const scn::Scenario& scenario,
                           const EvalSpan& span_in) {
    require_dcp(scenario, dcp_id);
    const EvalSpan span = resolve(span_in, scenario.grid);
    const auto merged = union_intervals(windows, dcp_id, span);

    RevisitStats stats;
    if (merged.empty()) {
        stats.max_revisit_s = inf;
        return stats;
    }
    auto push_gap = [&](double g) {
        if (g > 0.0) stats.gaps_s.push_back(g);
    };
    push_gap(merged.front().first - span.from_s);
    for (std::size_t i = 1; i < merged.size(); ++i)
        push_gap(merged[i].first - merged[i - 1].second);
    push_gap(span.to_s - merged.back().second);

    stats.max_revisit_s = 0.0;
    for (double g : stats.gaps_s) stats.max_revisit_s = std::max(stats.max_revisit_s, g);
    return stats;
}

double ground_access_per_day(const std::vector<access::AccessWindow>& windows,
                             const std::string& satellite_id, const scn::Scenario& scenario,
                             const EvalSpan& span_in) {
    const EvalSpan span = resolve(span_in, scenario.grid);
    double total_s = 0.0;
    for (const auto& w : windows) {
        if (w.satellite_id != satellite_id || w.kind != access::WindowKind::GroundContact)
            continue;
        total_s += std::max(0.0, std::min(w.end_s, span.to_s) - std::max(w.start_s, span.from_s));
    }
    const double days = (span.to_s - span.from_s) / 86400.0;
    return days > 0.0 ? total_s / days : 0.0;
}

FigureOfMeritReport compute_report(const scn::Scenario& scenario,
                                   const access::AccessResult& access,
                                   const EvalSpan& span_in) {
    const EvalSpan span = resolve(span_in, scenario.grid);
    FigureOfMeritReport report;

    std::size_t revisit_ok_count = 0;
    for (const auto& dcp : scenario.dcps) {
        DcpFom f;
        f.temporal_coverage_fraction =
            temporal_coverage(access.windows, dcp.id, scenario, span);
        f.max_revisit_s = revisit_times(access.windows, dcp.id, scenario, span).max_revisit_s;
        f.revisit_ok = f.max_revisit_s <= scenario.thresholds.max_revisit_s;
        if (f.revisit_ok) ++revisit_ok_count;
        report.per_dcp.emplace(dcp.id, f);
    }

    const auto sufficiency =
        access::downlink_sufficiency(scenario, access.windows, access.storage);
    for (const auto& sat : scenario.satellites) {
        SatelliteFom f;
        f.ground_access_s_per_day =
            ground_access_per_day(access.windows, sat.id, scenario, span);
        f.engagement_fraction = sat.engagement_fraction;
        f.downlink_sufficient = sufficiency.at(sat.id);
        if (auto it = access.storage.find(sat.id); it != access.storage.end())
            for (double occ : it->second.occupancy_bytes)
                f.storage_peak_bytes = std::max(f.storage_peak_bytes, occ);
        report.per_satellite.emplace(sat.id, f);
    }

    report.federation.dcp_coverage_fraction =
        scenario.dcps.empty()
            ? 1.0
            : static_cast<double>(revisit_ok_count) / static_cast<double>(scenario.dcps.size());
    for (const auto& gs : scenario.ground_stations)
        if (gs.federated) ++report.federation.dedicated_ground_stations;
    return report;
}

std::vector<ComplianceResult> check_compliance(const FigureOfMeritReport& report,
                                               const scn::Thresholds& thresholds,
                                               const scn::Scenario& scenario) {
    std::vector<ComplianceResult> out;
    auto add = [&](const std::string& rule, const std::string& subject, double threshold,
                   double observed, const std::string& unit, bool pass) {
        out.push_back({rule, subject, threshold, observed, unit, pass});
    };

    add("min_dcp_coverage", "federation", thresholds.min_dcp_coverage_fraction,
        report.federation.dcp_coverage_fraction, "fraction",
        report.federation.dcp_coverage_fraction >= thresholds.min_dcp_coverage_fraction);

    add("min_dedicated_ground_stations", "federation",
        static_cast<double>(thresholds.min_dedicated_ground_stations),
        static_cast<double>(report.federation.dedicated_ground_stations), "count",
        report.federation.dedicated_ground_stations >= thresholds.min_dedicated_ground_stations);

    for (const auto& dcp : scenario.dcps) {
        const auto& f = report.per_dcp.at(dcp.id);
        add("max_revisit", dcp.id, dcp.required_revisit_s, f.max_revisit_s, "s",
            f.max_revisit_s <= dcp.required_revisit_s);
    }

    for (const auto& sat : scenario.satellites) {
        const auto& f = report.per_satellite.at(sat.id);
        if (!sat.dedicated)
            add("min_engagement", sat.id, thresholds.min_engagement_fraction,
                f.engagement_fraction, "fraction",
                f.engagement_fraction >= thresholds.min_engagement_fraction);
        if (sat.access_mode == scn::AccessMode::StoreAndForward)
            add("min_storage", sat.id, thresholds.min_storage_bytes, sat.storage_capacity_bytes,
                "bytes", sat.storage_capacity_bytes >= thresholds.min_storage_bytes);
        add("max_peak_power", sat.id, thresholds.max_peak_power_w, sat.peak_power_w, "W",
            sat.peak_power_w <= thresholds.max_peak_power_w);
        add("min_ground_access", sat.id, thresholds.min_ground_access_s_per_day,
            f.ground_access_s_per_day, "s/day",
            f.ground_access_s_per_day >= thresholds.min_ground_access_s_per_day);
        add("downlink_sufficiency", sat.id, 1.0, f.downlink_sufficient ? 1.0 : 0.0, "bool",
            f.downlink_sufficient);
    }
    return out;
}

Evaluation evaluate(const scn::Scenario& scenario, const access::AccessOptions& options,
                    const EvalSpan& span) {
    Evaluation ev;
    ev.access = evaluate_access(scenario, options);
    ev.report = compute_report(scenario, ev.access, span);
    ev.compliance = check_compliance(ev.report, scenario.thresholds, scenario);
    ev.all_pass = std::all_of(ev.compliance.begin(), ev.compliance.end(),
                              [](const ComplianceResult& r) { return r.pass; });
    return ev;
}

} // namespace fom
} // namespace fedsat
