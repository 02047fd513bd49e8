#include "fedsat/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fedsat {
namespace scn {

namespace {

using nlohmann::ordered_json;

constexpr double deg = M_PI / 180.0;

double to_rad(double degrees) { return degrees * deg; }
double to_deg(double radians) { return radians / deg; }

const ordered_json& require(const ordered_json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(ctx + ": missing field \"" + key + "\"");
    return *it;
}

double num(const ordered_json& j, const char* key, const std::string& ctx) {
    const auto& v = require(j, key, ctx);
    if (!v.is_number())
        throw ParseError(ctx + ": field \"" + key + "\" must be a number");
    return v.get<double>();
}

double num_or(const ordered_json& j, const char* key, double fallback) {
    auto it = j.find(key);
    return it == j.end() ? fallback : it->get<double>();
}

std::string str(const ordered_json& j, const char* key, const std::string& ctx) {
    const auto& v = require(j, key, ctx);
    if (!v.is_string())
        throw ParseError(ctx + ": field \"" + key + "\" must be a string");
    return v.get<std::string>();
}

geom::GroundPoint parse_location(const ordered_json& j, const std::string& ctx) {
    geom::GroundPoint p;
    p.lat_rad = to_rad(num(j, "lat_deg", ctx));
    p.lon_rad = orbit::wrap_pi(to_rad(num(j, "lon_deg", ctx)));
    return p;
}

geom::FieldOfView parse_fov(const ordered_json& j, const std::string& ctx,
                            double default_min_elevation_deg) {
    geom::FieldOfView fov;
    fov.half_angle_rad = to_rad(num(j, "half_angle_deg", ctx));
    fov.min_elevation_rad = to_rad(num_or(j, "min_elevation_deg", default_min_elevation_deg));
    return fov;
}

Satellite parse_satellite(const ordered_json& j) {
    Satellite s;
    s.id = str(j, "id", "satellite");
    const std::string ctx = "satellite \"" + s.id + "\"";
    s.owner = j.value("owner", std::string{});

    const auto& el = require(j, "elements", ctx);
    s.elements.semi_major_axis_km = num(el, "semi_major_axis_km", ctx);
    s.elements.eccentricity = num(el, "eccentricity", ctx);
    s.elements.inclination_rad = orbit::wrap_two_pi(to_rad(num(el, "inclination_deg", ctx)));
    s.elements.raan_rad = orbit::wrap_two_pi(to_rad(num(el, "raan_deg", ctx)));
    s.elements.arg_perigee_rad = orbit::wrap_two_pi(to_rad(num(el, "arg_perigee_deg", ctx)));
    s.elements.mean_anomaly_epoch_rad =
        orbit::wrap_two_pi(to_rad(num(el, "mean_anomaly_deg", ctx)));
    s.elements.epoch_s = num_or(el, "epoch_s", 0.0);

    s.fov_dcp = parse_fov(require(j, "fov_dcp", ctx), ctx, 0.0);
    s.fov_ground = parse_fov(require(j, "fov_ground", ctx), ctx, 5.0);

    const std::string mode = str(j, "access_mode", ctx);
    if (mode == "bent_pipe")
        s.access_mode = AccessMode::BentPipe;
    else if (mode == "store_and_forward")
        s.access_mode = AccessMode::StoreAndForward;
    else
        throw ParseError(ctx + ": access_mode must be \"bent_pipe\" or \"store_and_forward\"");

    s.storage_capacity_bytes = num_or(j, "storage_capacity_bytes", 0.0);
    s.downlink_rate_bps = num(j, "downlink_rate_bps", ctx);
    s.dcp_uplink_rate_bps = num(j, "dcp_uplink_rate_bps", ctx);
    s.dedicated = require(j, "dedicated", ctx).get<bool>();
    s.engagement_fraction = num_or(j, "engagement_fraction", 1.0);
    s.peak_power_w = num_or(j, "peak_power_w", 0.0);
    return s;
}

ordered_json location_json(const geom::GroundPoint& p) {
    return ordered_json{{"lat_deg", to_deg(p.lat_rad)}, {"lon_deg", to_deg(p.lon_rad)}};
}

ordered_json fov_json(const geom::FieldOfView& f) {
    return ordered_json{{"half_angle_deg", to_deg(f.half_angle_rad)},
                        {"min_elevation_deg", to_deg(f.min_elevation_rad)}};
}

ordered_json satellite_json(const Satellite& s) {
    return ordered_json{
        {"id", s.id},
        {"owner", s.owner},
        {"elements",
         {{"semi_major_axis_km", s.elements.semi_major_axis_km},
          {"eccentricity", s.elements.eccentricity},
          {"inclination_deg", to_deg(s.elements.inclination_rad)},
          {"raan_deg", to_deg(s.elements.raan_rad)},
          {"arg_perigee_deg", to_deg(s.elements.arg_perigee_rad)},
          {"mean_anomaly_deg", to_deg(s.elements.mean_anomaly_epoch_rad)},
          {"epoch_s", s.elements.epoch_s}}},
        {"fov_dcp", fov_json(s.fov_dcp)},
        {"fov_ground", fov_json(s.fov_ground)},
        {"access_mode",
         s.access_mode == AccessMode::BentPipe ? "bent_pipe" : "store_and_forward"},
        {"storage_capacity_bytes", s.storage_capacity_bytes},
        {"downlink_rate_bps", s.downlink_rate_bps},
        {"dcp_uplink_rate_bps", s.dcp_uplink_rate_bps},
        {"dedicated", s.dedicated},
        {"engagement_fraction", s.engagement_fraction},
        {"peak_power_w", s.peak_power_w}};
}

bool close(double a, double b) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= 1e-12 * scale;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ordered_json parse_json(const std::string& text, const std::string& what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

} // namespace

const Satellite* Scenario::find_satellite(const std::string& id) const {
    for (const auto& s : satellites)
        if (s.id == id) return &s;
    return nullptr;
}

const DataCollectionPlatform* Scenario::find_dcp(const std::string& id) const {
    for (const auto& d : dcps)
        if (d.id == id) return &d;
    return nullptr;
}

std::vector<Violation> validate_scenario(const Scenario& s) {
    std::vector<Violation> out;
    auto add = [&](const std::string& id, const std::string& rule, const std::string& msg) {
        out.push_back({id, rule, msg});
    };

    auto check_unique = [&](auto&& list, const char* what) {
        std::set<std::string> seen;
        for (const auto& item : list)
            if (!seen.insert(item.id).second)
                add(item.id, "unique_ids", std::string(what) + " id appears more than once");
    };
    check_unique(s.satellites, "satellite");
    check_unique(s.dcps, "dcp");
    check_unique(s.ground_stations, "ground station");

    for (const auto& sat : s.satellites) {
        const auto& el = sat.elements;
        if (!(el.eccentricity >= 0.0 && el.eccentricity < 1.0))
            add(sat.id, "eccentricity_range", "eccentricity must be in [0,1)");
        else if (!(el.semi_major_axis_km * (1.0 - el.eccentricity) > earth::radius_km))
            add(sat.id, "perigee_above_surface", "perigee must be above the Earth surface");
        if (sat.access_mode == AccessMode::BentPipe && sat.storage_capacity_bytes != 0.0)
            add(sat.id, "bentpipe_zero_storage", "bent-pipe satellites carry no storage");
        if (sat.storage_capacity_bytes < 0.0)
            add(sat.id, "storage_nonnegative", "storage capacity must be >= 0");
        if (sat.dedicated && sat.engagement_fraction != 1.0)
            add(sat.id, "dedicated_full_engagement",
                "dedicated satellites must have engagement_fraction 1");
        if (!(sat.engagement_fraction >= 0.0 && sat.engagement_fraction <= 1.0))
            add(sat.id, "engagement_range", "engagement_fraction must be in [0,1]");
        if (!(sat.downlink_rate_bps > 0.0) || !(sat.dcp_uplink_rate_bps > 0.0))
            add(sat.id, "rates_positive", "data rates must be > 0");
        if (sat.peak_power_w < 0.0)
            add(sat.id, "power_nonnegative", "peak_power_w must be >= 0");
        for (const auto* fov : {&sat.fov_dcp, &sat.fov_ground}) {
            if (!(fov->half_angle_rad >= 0.0 && fov->half_angle_rad <= M_PI / 2.0))
                add(sat.id, "fov_half_angle_range", "FOV half angle must be in [0,90] deg");
            if (!(fov->min_elevation_rad >= 0.0 && fov->min_elevation_rad < M_PI / 2.0))
                add(sat.id, "fov_min_elevation_range", "FOV min elevation must be in [0,90) deg");
        }
    }

    auto check_location = [&](const std::string& id, const geom::GroundPoint& p) {
        if (!(p.lat_rad >= -M_PI / 2.0 && p.lat_rad <= M_PI / 2.0))
            add(id, "latitude_range", "latitude must be in [-90,90] deg");
        if (!(p.lon_rad >= -M_PI && p.lon_rad < M_PI))
            add(id, "longitude_range", "longitude must be in [-180,180) deg");
    };

    for (const auto& dcp : s.dcps) {
        check_location(dcp.id, dcp.location);
        if (dcp.data_per_pass_bytes < 0.0)
            add(dcp.id, "data_nonnegative", "data_per_pass_bytes must be >= 0");
        if (!(dcp.required_revisit_s > 0.0))
            add(dcp.id, "revisit_positive", "required_revisit_s must be > 0");
    }

    for (const auto& gs : s.ground_stations) {
        check_location(gs.id, gs.location);
        if (!(gs.min_elevation_rad >= 0.0 && gs.min_elevation_rad < M_PI / 2.0))
            add(gs.id, "min_elevation_range", "min elevation must be in [0,90) deg");
    }

    if (s.ground_stations.empty())
        add("scenario", "has_ground_station", "at least one ground station is required");
    if (!(s.grid.end_s > 0.0))
        add("scenario", "grid_end_positive", "grid end_s must be > 0");
    if (!(s.grid.step_s > 0.0))
        add("scenario", "grid_step_positive", "grid step_s must be > 0");

    const auto& t = s.thresholds;
    if (!(t.min_dcp_coverage_fraction > 0.0 && t.min_dcp_coverage_fraction <= 1.0))
        add("scenario", "coverage_fraction_range", "min_dcp_coverage_fraction must be in (0,1]");
    if (!(t.min_engagement_fraction > 0.0 && t.min_engagement_fraction <= 1.0))
        add("scenario", "engagement_fraction_range", "min_engagement_fraction must be in (0,1]");
    if (!(t.min_storage_bytes > 0.0) || !(t.max_peak_power_w > 0.0) ||
        !(t.max_revisit_s > 0.0) || !(t.min_ground_access_s_per_day > 0.0) ||
        t.min_dedicated_ground_stations < 1 || !(t.planning_period_s > 0.0))
        add("scenario", "thresholds_positive", "all thresholds must be positive");

    return out;
}

Scenario parse_scenario(const std::string& text) {
    const ordered_json j = parse_json(text, "scenario");

    Scenario s;
    const auto& grid = require(j, "grid", "scenario");
    s.grid.end_s = num(grid, "end_s", "grid");
    s.grid.step_s = num_or(grid, "step_s", 10.0);

    if (auto it = j.find("thresholds"); it != j.end()) {
        const auto& t = *it;
        auto& th = s.thresholds;
        th.min_dcp_coverage_fraction = num_or(t, "min_dcp_coverage_fraction", th.min_dcp_coverage_fraction);
        th.min_engagement_fraction = num_or(t, "min_engagement_fraction", th.min_engagement_fraction);
        th.min_storage_bytes = num_or(t, "min_storage_bytes", th.min_storage_bytes);
        th.max_peak_power_w = num_or(t, "max_peak_power_w", th.max_peak_power_w);
        th.max_revisit_s = num_or(t, "max_revisit_s", th.max_revisit_s);
        th.min_ground_access_s_per_day =
            num_or(t, "min_ground_access_s_per_day", th.min_ground_access_s_per_day);
        th.min_dedicated_ground_stations = static_cast<int>(
            num_or(t, "min_dedicated_ground_stations", th.min_dedicated_ground_stations));
        th.planning_period_s = num_or(t, "planning_period_s", th.planning_period_s);
    }

    for (const auto& sj : require(j, "satellites", "scenario"))
        s.satellites.push_back(parse_satellite(sj));

    for (const auto& dj : require(j, "dcps", "scenario")) {
        DataCollectionPlatform d;
        d.id = str(dj, "id", "dcp");
        d.location = parse_location(require(dj, "location", "dcp \"" + d.id + "\""), d.id);
        d.data_per_pass_bytes = num_or(dj, "data_per_pass_bytes", 0.0);
        d.required_revisit_s = num_or(dj, "required_revisit_s", 3600.0);
        s.dcps.push_back(std::move(d));
    }

    for (const auto& gj : require(j, "ground_stations", "scenario")) {
        GroundStation g;
        g.id = str(gj, "id", "ground_station");
        g.location = parse_location(require(gj, "location", "ground station \"" + g.id + "\""), g.id);
        g.min_elevation_rad = to_rad(num_or(gj, "min_elevation_deg", 5.0));
        g.federated = gj.value("federated", false);
        s.ground_stations.push_back(std::move(g));
    }

    return s;
}

Scenario load_scenario(const std::string& path) {
    Scenario s = parse_scenario(read_file(path));
    auto violations = validate_scenario(s);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << path << ": " << violations.size() << " invariant violation(s):";
        for (const auto& v : violations)
            msg << "\n  [" << v.rule << "] " << v.subject_id << ": " << v.message;
        throw ValidationError(msg.str(), std::move(violations));
    }
    return s;
}

Satellite load_satellite(const std::string& path) {
    return parse_satellite(parse_json(read_file(path), path));
}

std::string serialize_scenario(const Scenario& s) {
    ordered_json j;
    j["grid"] = {{"end_s", s.grid.end_s}, {"step_s", s.grid.step_s}};
    const auto& t = s.thresholds;
    j["thresholds"] = {{"min_dcp_coverage_fraction", t.min_dcp_coverage_fraction},
                       {"min_engagement_fraction", t.min_engagement_fraction},
                       {"min_storage_bytes", t.min_storage_bytes},
                       {"max_peak_power_w", t.max_peak_power_w},
                       {"max_revisit_s", t.max_revisit_s},
                       {"min_ground_access_s_per_day", t.min_ground_access_s_per_day},
                       {"min_dedicated_ground_stations", t.min_dedicated_ground_stations},
                       {"planning_period_s", t.planning_period_s}};
    j["satellites"] = ordered_json::array();
    for (const auto& sat : s.satellites)
        j["satellites"].push_back(satellite_json(sat));
    j["dcps"] = ordered_json::array();
    for (const auto& d : s.dcps)
        j["dcps"].push_back(ordered_json{{"id", d.id},
                                         {"location", location_json(d.location)},
                                         {"data_per_pass_bytes", d.data_per_pass_bytes},
                                         {"required_revisit_s", d.required_revisit_s}});
    j["ground_stations"] = ordered_json::array();
    for (const auto& g : s.ground_stations)
        j["ground_stations"].push_back(
            ordered_json{{"id", g.id},
                         {"location", location_json(g.location)},
                         {"min_elevation_deg", to_deg(g.min_elevation_rad)},
                         {"federated", g.federated}});
    return j.dump(2) + "\n";
}

bool approx_equal(const Scenario& a, const Scenario& b) {
    if (a.satellites.size() != b.satellites.size() || a.dcps.size() != b.dcps.size() ||
        a.ground_stations.size() != b.ground_stations.size())
        return false;
    if (!close(a.grid.end_s, b.grid.end_s) || !close(a.grid.step_s, b.grid.step_s))
        return false;

    const auto& ta = a.thresholds;
    const auto& tb = b.thresholds;
    if (!close(ta.min_dcp_coverage_fraction, tb.min_dcp_coverage_fraction) ||
        !close(ta.min_engagement_fraction, tb.min_engagement_fraction) ||
        !close(ta.min_storage_bytes, tb.min_storage_bytes) ||
        !close(ta.max_peak_power_w, tb.max_peak_power_w) ||
        !close(ta.max_revisit_s, tb.max_revisit_s) ||
        !close(ta.min_ground_access_s_per_day, tb.min_ground_access_s_per_day) ||
        ta.min_dedicated_ground_stations != tb.min_dedicated_ground_stations ||
        !close(ta.planning_period_s, tb.planning_period_s))
        return false;

    for (std::size_t i = 0; i < a.satellites.size(); ++i) {
        const auto& x = a.satellites[i];
        const auto& y = b.satellites[i];
        const auto& ex = x.elements;
        const auto& ey = y.elements;
        if (x.id != y.id || x.owner != y.owner || x.access_mode != y.access_mode ||
            x.dedicated != y.dedicated)
            return false;
        if (!close(ex.semi_major_axis_km, ey.semi_major_axis_km) ||
            !close(ex.eccentricity, ey.eccentricity) ||
            !close(ex.inclination_rad, ey.inclination_rad) ||
            !close(ex.raan_rad, ey.raan_rad) ||
            !close(ex.arg_perigee_rad, ey.arg_perigee_rad) ||
            !close(ex.mean_anomaly_epoch_rad, ey.mean_anomaly_epoch_rad) ||
            !close(ex.epoch_s, ey.epoch_s))
            return false;
        if (!close(x.fov_dcp.half_angle_rad, y.fov_dcp.half_angle_rad) ||
            !close(x.fov_dcp.min_elevation_rad, y.fov_dcp.min_elevation_rad) ||
            !close(x.fov_ground.half_angle_rad, y.fov_ground.half_angle_rad) ||
            !close(x.fov_ground.min_elevation_rad, y.fov_ground.min_elevation_rad))
            return false;
        if (!close(x.storage_capacity_bytes, y.storage_capacity_bytes) ||
            !close(x.downlink_rate_bps, y.downlink_rate_bps) ||
            !close(x.dcp_uplink_rate_bps, y.dcp_uplink_rate_bps) ||
            !close(x.engagement_fraction, y.engagement_fraction) ||
            !close(x.peak_power_w, y.peak_power_w))
            return false;
    }
    for (std::size_t i = 0; i < a.dcps.size(); ++i) {
        const auto& x = a.dcps[i];
        const auto& y = b.dcps[i];
        if (x.id != y.id || !close(x.location.lat_rad, y.location.lat_rad) ||
            !close(x.location.lon_rad, y.location.lon_rad) ||
            !close(x.data_per_pass_bytes, y.data_per_pass_bytes) ||
            !close(x.required_revisit_s, y.required_revisit_s))
            return false;
    }
    for (std::size_t i = 0; i < a.ground_stations.size(); ++i) {
        const auto& x = a.ground_stations[i];
        const auto& y = b.ground_stations[i];
        if (x.id != y.id || x.federated != y.federated ||
            !close(x.location.lat_rad, y.location.lat_rad) ||
            !close(x.location.lon_rad, y.location.lon_rad) ||
            !close(x.min_elevation_rad, y.min_elevation_rad))
            return false;
    }
    return true;
}

} // namespace scn
} // namespace fedsat
