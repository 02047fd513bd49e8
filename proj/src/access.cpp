#include "fedsat/access.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fedsat {
namespace access {

namespace {

const char* kind_name(WindowKind k) {
    switch (k) {
    case WindowKind::DcpContact: return "dcp_contact";
    case WindowKind::GroundContact: return "ground_contact";
    case WindowKind::SimultaneousContact: return "simultaneous_contact";
    }
    return "?";
}

/**
 * Step-by-step storage accounting shared by the inline engine and the
 * window replay. Within one step the order is fixed: ingest from every
 * active DCP (scenario order), then drain toward the ground.
 */
class StorageLedger {
public:
    StorageLedger(const scn::Satellite& sat, const scn::Scenario& scenario)
        : capacity_(sat.storage_capacity_bytes),
          uplink_step_bytes_(sat.dcp_uplink_rate_bps * scenario.grid.step_s / 8.0),
          downlink_step_bytes_(sat.downlink_rate_bps * scenario.grid.step_s / 8.0),
          pass_remaining_(scenario.dcps.size(), 0.0),
          in_window_(scenario.dcps.size(), 0) {
        timeline_.satellite_id = sat.id;
        timeline_.occupancy_bytes.reserve(scenario.grid.instant_count());
        timeline_.ingested_bytes.reserve(scenario.grid.instant_count());
        for (const auto& dcp : scenario.dcps)
            data_per_pass_.push_back(dcp.data_per_pass_bytes);
    }

    double free_bytes() const { return capacity_ - occupancy_; }

    void step(const std::vector<std::uint8_t>& dcp_active, bool ground_active) {
        double ingested = 0.0;
        for (std::size_t d = 0; d < dcp_active.size(); ++d) {
            if (dcp_active[d]) {
                if (!in_window_[d]) {
                    in_window_[d] = 1;
                    pass_remaining_[d] = data_per_pass_[d]; // buffer re-armed per window
                }
                const double transmit = std::min(pass_remaining_[d], uplink_step_bytes_);
                const double taken = std::min(transmit, free_bytes());
                occupancy_ += taken;
                ingested += taken;
                timeline_.collected_bytes_total += taken;
                timeline_.dropped_bytes_total += transmit - taken;
                pass_remaining_[d] -= transmit;
            } else if (in_window_[d]) {
                close_window(d);
            }
        }
        if (ground_active) {
            const double drained = std::min(occupancy_, downlink_step_bytes_);
            occupancy_ -= drained;
            timeline_.downlinked_bytes_total += drained;
        }
        timeline_.occupancy_bytes.push_back(occupancy_);
        timeline_.ingested_bytes.push_back(ingested);
    }

    StorageTimeline finish() {
        for (std::size_t d = 0; d < in_window_.size(); ++d)
            if (in_window_[d]) close_window(d);
        return std::move(timeline_);
    }

private:
    void close_window(std::size_t d) {
        in_window_[d] = 0;
        timeline_.dropped_bytes_total += pass_remaining_[d]; // refused, buffer keeps it
        pass_remaining_[d] = 0.0;
    }

    double capacity_;
    double uplink_step_bytes_;
    double downlink_step_bytes_;
    std::vector<double> pass_remaining_;
    std::vector<std::uint8_t> in_window_;
    std::vector<double> data_per_pass_;
    double occupancy_ = 0.0;
    StorageTimeline timeline_;
};

const SatelliteOverride* find_override(const AccessOptions& options, const std::string& id) {
    auto it = options.overrides.find(id);
    return it == options.overrides.end() ? nullptr : &it->second;
}

geom::FieldOfView station_fov(const scn::Satellite& sat, const scn::GroundStation& gs) {
    // the station's own mask applies on top of the satellite cone
    return {sat.fov_ground.half_angle_rad,
            std::max(sat.fov_ground.min_elevation_rad, gs.min_elevation_rad)};
}

void append_windows(std::vector<AccessWindow>& out, const std::vector<std::uint8_t>& row,
                    const scn::TimeGrid& grid, const std::string& sat_id,
                    const std::string& target_id, WindowKind kind) {
    const std::size_t n = row.size();
    std::size_t i = 0;
    while (i < n) {
        if (!row[i]) { ++i; continue; }
        std::size_t j = i;
        while (j + 1 < n && row[j + 1]) ++j;
        out.push_back({sat_id, target_id, kind, grid.instant(i),
                       grid.instant(j) + grid.step_s});
        i = j + 1;
    }
}

std::size_t instant_index(const scn::TimeGrid& grid, double time_s) {
    const double pos = time_s / grid.step_s;
    const double rounded = std::round(pos);
    if (std::fabs(pos - rounded) > 1e-9 || rounded < 0.0 ||
        static_cast<std::size_t>(rounded) >= grid.instant_count())
        throw std::invalid_argument("time is not a grid instant");
    return static_cast<std::size_t>(rounded);
}

} // namespace

bool duty_active(const scn::Satellite& sat, double time_s, double planning_period_s,
                 const SatelliteOverride* ov) {
    if (sat.dedicated) return true;
    const double f = sat.engagement_fraction;
    if (f >= 1.0) return true;
    if (f <= 0.0) return false;
    const double phase = (ov && time_s >= ov->phase_from_s) ? ov->duty_phase_s : 0.0;
    double u = std::fmod(time_s - phase, planning_period_s);
    if (u < 0.0) u += planning_period_s;
    return u < f * planning_period_s;
}

AccessResult evaluate_access(const scn::Scenario& scenario, const AccessOptions& options) {
    const auto& grid = scenario.grid;
    const std::size_t n = grid.instant_count();
    const std::size_t n_dcp = scenario.dcps.size();
    const std::size_t n_gs = scenario.ground_stations.size();

    AccessResult result;
    for (const auto& sat : scenario.satellites) {
        for (const auto& dcp : scenario.dcps)
            result.pairs.push_back({sat.id, dcp.id, TargetKind::Dcp});
        for (const auto& gs : scenario.ground_stations)
            result.pairs.push_back({sat.id, gs.id, TargetKind::GroundStation});
    }
    result.satisfied.assign(result.pairs.size(), std::vector<std::uint8_t>(n, 0));

    for (std::size_t s = 0; s < scenario.satellites.size(); ++s) {
        const auto& sat = scenario.satellites[s];
        const SatelliteOverride* ov = find_override(options, sat.id);
        const std::size_t row0 = s * (n_dcp + n_gs);

        const bool stores = sat.access_mode == scn::AccessMode::StoreAndForward;
        StorageLedger ledger(sat, scenario);
        std::vector<std::uint8_t> dcp_active(n_dcp, 0);

        for (std::size_t i = 0; i < n; ++i) {
            const double t = grid.instant(i);
            const bool alive = !(ov && ov->inactive_from_s && t >= *ov->inactive_from_s);
            const orbit::SatelliteState state = orbit::propagate_to(sat.elements, t);

            bool any_ground = false;
            for (std::size_t g = 0; g < n_gs; ++g) {
                const auto& gs = scenario.ground_stations[g];
                const bool vis =
                    alive && geom::in_fov(state, gs.location, station_fov(sat, gs));
                result.satisfied[row0 + n_dcp + g][i] = vis;
                any_ground = any_ground || vis;
            }

            const bool duty =
                duty_active(sat, t, scenario.thresholds.planning_period_s, ov);
            for (std::size_t d = 0; d < n_dcp; ++d) {
                const auto& dcp = scenario.dcps[d];
                const bool geom_ok =
                    alive && duty && geom::in_fov(state, dcp.location, sat.fov_dcp);
                bool ok;
                if (stores)
                    ok = geom_ok && ledger.free_bytes() > 0.0; // free at step start
                else
                    ok = geom_ok && any_ground; // simultaneous visibility
                dcp_active[d] = ok;
                result.satisfied[row0 + d][i] = ok;
            }

            if (stores) ledger.step(dcp_active, any_ground);
        }

        if (stores) result.storage.emplace(sat.id, ledger.finish());

        const WindowKind dcp_kind =
            stores ? WindowKind::DcpContact : WindowKind::SimultaneousContact;
        for (std::size_t d = 0; d < n_dcp; ++d)
            append_windows(result.windows, result.satisfied[row0 + d], grid, sat.id,
                           scenario.dcps[d].id, dcp_kind);
        for (std::size_t g = 0; g < n_gs; ++g)
            append_windows(result.windows, result.satisfied[row0 + n_dcp + g], grid, sat.id,
                           scenario.ground_stations[g].id, WindowKind::GroundContact);
    }

    std::sort(result.windows.begin(), result.windows.end(),
              [](const AccessWindow& a, const AccessWindow& b) {
                  return std::tie(a.satellite_id, a.target_id, a.start_s) <
                         std::tie(b.satellite_id, b.target_id, b.start_s);
              });
    return result;
}

std::vector<InstantSolution> instant_solutions(const scn::Scenario& scenario, double time_s) {
    const std::size_t i = instant_index(scenario.grid, time_s);
    const AccessResult result = evaluate_access(scenario);
    std::vector<InstantSolution> out;
    out.reserve(result.pairs.size());
    for (std::size_t p = 0; p < result.pairs.size(); ++p) {
        const auto& key = result.pairs[p];
        out.push_back({scenario.grid.instant(i), key.satellite_id, key.target_id, key.kind,
                       result.satisfied[p][i] != 0});
    }
    return out;
}

std::vector<AccessWindow> access_windows(const scn::Scenario& scenario) {
    return evaluate_access(scenario).windows;
}

std::map<std::string, StorageTimeline> simulate_store_and_forward(
    const scn::Scenario& scenario, const std::vector<AccessWindow>& windows) {
    const auto& grid = scenario.grid;
    const std::size_t n = grid.instant_count();

    std::map<std::string, StorageTimeline> out;
    for (const auto& sat : scenario.satellites) {
        if (sat.access_mode != scn::AccessMode::StoreAndForward) continue;

        std::vector<std::vector<std::uint8_t>> dcp_cover(scenario.dcps.size(),
                                                         std::vector<std::uint8_t>(n, 0));
        std::vector<std::uint8_t> ground_cover(n, 0);
        for (const auto& w : windows) {
            if (w.satellite_id != sat.id) continue;
            const std::size_t lo = instant_index(grid, w.start_s);
            const std::size_t hi = instant_index(grid, w.end_s - grid.step_s);
            if (w.kind == WindowKind::GroundContact) {
                for (std::size_t i = lo; i <= hi; ++i) ground_cover[i] = 1;
            } else {
                for (std::size_t d = 0; d < scenario.dcps.size(); ++d)
                    if (scenario.dcps[d].id == w.target_id)
                        for (std::size_t i = lo; i <= hi; ++i) dcp_cover[d][i] = 1;
            }
        }

        StorageLedger ledger(sat, scenario);
        std::vector<std::uint8_t> dcp_active(scenario.dcps.size(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < scenario.dcps.size(); ++d)
                dcp_active[d] = dcp_cover[d][i];
            ledger.step(dcp_active, ground_cover[i] != 0);
        }
        out.emplace(sat.id, ledger.finish());
    }
    return out;
}

std::map<std::string, bool> downlink_sufficiency(
    const scn::Scenario& scenario, const std::vector<AccessWindow>& windows,
    const std::map<std::string, StorageTimeline>& storage) {
    std::map<std::string, bool> out;
    for (const auto& sat : scenario.satellites) {
        auto tl = storage.find(sat.id);
        if (tl == storage.end()) {
            out[sat.id] = true; // nothing buffered, nothing to download
            continue;
        }

        const double period = orbit::orbital_period(sat.elements);
        const std::size_t partitions =
            static_cast<std::size_t>(std::floor(scenario.grid.end_s / period));
        bool ok = true;
        for (std::size_t k = 0; k < partitions && ok; ++k) {
            const double lo = static_cast<double>(k) * period;
            const double hi = lo + period;

            double collected = 0.0;
            const auto& ingested = tl->second.ingested_bytes;
            for (std::size_t i = 0; i < ingested.size(); ++i) {
                const double t = scenario.grid.instant(i);
                if (t >= lo && t < hi) collected += ingested[i];
            }

            double contact_s = 0.0;
            for (const auto& w : windows)
                if (w.satellite_id == sat.id && w.kind == WindowKind::GroundContact)
                    contact_s += std::max(0.0, std::min(w.end_s, hi) - std::max(w.start_s, lo));

            const double capacity_bytes = contact_s * sat.downlink_rate_bps / 8.0;
            ok = collected <= capacity_bytes + 1e-6;
        }
        out[sat.id] = ok;
    }
    return out;
}

std::string windows_csv(const std::vector<AccessWindow>& windows) {
    std::string out = "satellite_id,target_id,kind,start_s,end_s\n";
    char line[256];
    for (const auto& w : windows) {
        std::snprintf(line, sizeof(line), "%s,%s,%s,%.3f,%.3f\n", w.satellite_id.c_str(),
                      w.target_id.c_str(), kind_name(w.kind), w.start_s, w.end_s);
        out += line;
    }
    return out;
}

} // namespace access
} // namespace fedsat
