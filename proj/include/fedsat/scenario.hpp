#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fedsat/geometry.hpp"
#include "fedsat/orbit.hpp"

namespace fedsat {
namespace scn {

using orbit::TimeGrid;

enum class AccessMode { BentPipe, StoreAndForward };

/**
 * One constituent satellite of the federation.
 *
 * fov_dcp / fov_ground are the payload cones toward DCPs and ground
 * stations. BentPipe satellites relay in real time and carry no
 * storage; StoreAndForward satellites buffer DCP data up to
 * storage_capacity_bytes. Non-dedicated satellites make the payload
 * available only for the first engagement_fraction of every planning
 * period.
 */
struct Satellite {
    std::string id;
    std::string owner;
    orbit::OrbitalElements elements;
    geom::FieldOfView fov_dcp;
    geom::FieldOfView fov_ground;
    AccessMode access_mode = AccessMode::BentPipe;
    double storage_capacity_bytes = 0.0;
    double downlink_rate_bps = 0.0;
    double dcp_uplink_rate_bps = 0.0;
    bool dedicated = false;
    double engagement_fraction = 1.0;
    double peak_power_w = 0.0;
};

/// Fixed ground sensor that dumps a buffer of data on every contact.
struct DataCollectionPlatform {
    std::string id;
    geom::GroundPoint location;
    double data_per_pass_bytes = 0.0;
    double required_revisit_s = 3600.0;
};

struct GroundStation {
    std::string id;
    geom::GroundPoint location;
    double min_elevation_rad = 0.0;
    bool federated = false; // capable of controlling the hosted payload
};

/// Federation admission/compliance thresholds. Defaults hold unless the
/// scenario file overrides them.
struct Thresholds {
    double min_dcp_coverage_fraction = 0.90;
    double min_engagement_fraction = 0.10;
    double min_storage_bytes = 2e9;
    double max_peak_power_w = 2.0;
    double max_revisit_s = 86400.0;
    double min_ground_access_s_per_day = 600.0;
    int min_dedicated_ground_stations = 1;
    double planning_period_s = 86400.0;
};

struct Scenario {
    std::vector<Satellite> satellites;
    std::vector<DataCollectionPlatform> dcps;
    std::vector<GroundStation> ground_stations;
    TimeGrid grid;
    Thresholds thresholds;

    const Satellite* find_satellite(const std::string& id) const;
    const DataCollectionPlatform* find_dcp(const std::string& id) const;
};

/// One violated invariant: which rule, on which object.
struct Violation {
    std::string subject_id;
    std::string rule;
    std::string message;
};

/// Thrown on unreadable/unparsable scenario files (carries diagnostics).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a parsed scenario violates invariants; lists every violation.
struct ValidationError : std::runtime_error {
    std::vector<Violation> violations;
    ValidationError(const std::string& what, std::vector<Violation> v)
        : std::runtime_error(what), violations(std::move(v)) {}
};

/// Empty iff every invariant holds. Violations are data, not errors.
std::vector<Violation> validate_scenario(const Scenario& s);

/// Parse and fully validate a scenario file. Angles are degrees in the
/// file and radians in memory. Throws ParseError or ValidationError.
Scenario load_scenario(const std::string& path);

/// Parse a single satellite description (same schema as entries of
/// "satellites" in a scenario file).
Satellite load_satellite(const std::string& path);

/// Serialize back to the scenario file format (degrees in the file).
std::string serialize_scenario(const Scenario& s);

/// Parse from an in-memory document (used by load_scenario and tests).
Scenario parse_scenario(const std::string& text);

/// Field-wise equality with 1e-12 relative tolerance on floating-point
/// values (unit conversions in the file format cost up to one ulp).
bool approx_equal(const Scenario& a, const Scenario& b);

} // namespace scn
} // namespace fedsat
