#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fedsat/scenario.hpp"

namespace fedsat {
namespace access {

enum class TargetKind { Dcp, GroundStation };

enum class WindowKind { DcpContact, GroundContact, SimultaneousContact };

/// The per-instant CSP verdict for one (satellite, target) pair.
struct InstantSolution {
    double time_s = 0.0;
    std::string satellite_id;
    std::string target_id;
    TargetKind target_kind = TargetKind::Dcp;
    bool satisfied = false;
};

/**
 * Maximal run of satisfied instants for one (satellite, target) pair.
 *
 * The window covers grid instants t with start_s <= t < end_s; end_s is
 * the last satisfied instant plus one step, so duration end_s - start_s
 * equals instant count times step. DCP windows of bent-pipe satellites
 * are SimultaneousContact (ground-station co-visibility required),
 * store-and-forward ones DcpContact.
 */
struct AccessWindow {
    std::string satellite_id;
    std::string target_id;
    WindowKind kind = WindowKind::DcpContact;
    double start_s = 0.0;
    double end_s = 0.0;
};

/**
 * Storage history of one store-and-forward satellite.
 *
 * occupancy_bytes[i] is the occupancy at the end of grid instant i's
 * step; ingested_bytes[i] the bytes collected during that step.
 * dropped counts bytes the DCPs transmitted (or had left to transmit
 * when a window closed) that the satellite could not take.
 */
struct StorageTimeline {
    std::string satellite_id;
    std::vector<double> occupancy_bytes;
    std::vector<double> ingested_bytes;
    double collected_bytes_total = 0.0;
    double downlinked_bytes_total = 0.0;
    double dropped_bytes_total = 0.0;
};

/// Per-satellite evaluation overlay used by federation what-if runs.
struct SatelliteOverride {
    /// Fault: the satellite provides no access at instants >= this time.
    std::optional<double> inactive_from_s;
    /// Duty-cycle phase offset, applied at instants >= phase_from_s.
    double duty_phase_s = 0.0;
    double phase_from_s = 0.0;
};

struct AccessOptions {
    std::map<std::string, SatelliteOverride> overrides;
};

/// Identifies one (satellite, target) pair of the solution matrix.
struct PairKey {
    std::string satellite_id;
    std::string target_id;
    TargetKind kind = TargetKind::Dcp;
};

/**
 * Full CSP evaluation over the grid: per-instant solutions, their
 * run-length encoding into windows, and the storage simulation, all
 * produced by one deterministic forward sweep.
 */
struct AccessResult {
    std::vector<AccessWindow> windows; // sorted by (satellite, target, start)
    std::map<std::string, StorageTimeline> storage; // store-and-forward satellites
    std::vector<PairKey> pairs;
    std::vector<std::vector<std::uint8_t>> satisfied; // [pair][instant]
};

/// True when the satellite's hosted payload is available at time t.
bool duty_active(const scn::Satellite& sat, double time_s, double planning_period_s,
                 const SatelliteOverride* ov = nullptr);

/// The paper's CSP made executable; see AccessResult.
AccessResult evaluate_access(const scn::Scenario& scenario, const AccessOptions& options = {});

/// Solutions for every (satellite, target) pair at one grid instant.
/// Throws std::invalid_argument when t is not on the grid.
std::vector<InstantSolution> instant_solutions(const scn::Scenario& scenario, double time_s);

/// Windows only (run-length encoding of the satisfied instants).
std::vector<AccessWindow> access_windows(const scn::Scenario& scenario);

/**
 * Replay the storage ledger over externally supplied windows: per step
 * of a DcpContact the satellite ingests min(remaining pass data,
 * uplink_rate*step, free storage), then drains at downlink_rate*step
 * while in GroundContact; pass data re-arms at each window start and
 * the un-collected remainder counts as dropped at window close.
 */
std::map<std::string, StorageTimeline> simulate_store_and_forward(
    const scn::Scenario& scenario, const std::vector<AccessWindow>& windows);

/**
 * Per satellite: true iff in every complete orbital-period partition of
 * the horizon the ground-contact drain capacity covers the bytes
 * collected in that partition.
 */
std::map<std::string, bool> downlink_sufficiency(
    const scn::Scenario& scenario, const std::vector<AccessWindow>& windows,
    const std::map<std::string, StorageTimeline>& storage);

/// CSV dump: header satellite_id,target_id,kind,start_s,end_s.
std::string windows_csv(const std::vector<AccessWindow>& windows);

} // namespace access
} // namespace fedsat
