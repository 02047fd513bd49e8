#include "doctest.h"

#include <cmath>
#include <limits>

#include "fedsat/metrics.hpp"
#include "oracles.hpp"

using namespace fedsat;
using access::AccessWindow;
using access::WindowKind;
using scn::Scenario;

namespace {

constexpr double deg = M_PI / 180.0;

/// Scenario shell for metric ops driven by hand-built windows.
Scenario shell(double end_s = 4800.0, double step_s = 10.0) {
    Scenario sc;
    sc.grid = {end_s, step_s};
    scn::Satellite sat;
    sat.id = "sat-1";
    sat.elements.semi_major_axis_km = 7000.0;
    sat.fov_dcp = {60.0 * deg, 0.0};
    sat.fov_ground = {60.0 * deg, 0.0};
    sat.downlink_rate_bps = 1e6;
    sat.dcp_uplink_rate_bps = 4800.0;
    sat.dedicated = true;
    sat.peak_power_w = 1.0;
    scn::Satellite sat2 = sat;
    sat2.id = "sat-2";
    sc.satellites = {sat, sat2};
    sc.dcps = {{"dcp-1", {0.0, 0.0}, 0.0, 3600.0}};
    sc.ground_stations = {{"gs-1", {0.0, 0.0}, 5.0 * deg, true}};
    return sc;
}

AccessWindow dcp_window(const std::string& sat, double start, double end) {
    return {sat, "dcp-1", WindowKind::DcpContact, start, end};
}

AccessWindow ground_window(const std::string& sat, double start, double end) {
    return {sat, "gs-1", WindowKind::GroundContact, start, end};
}

} // namespace

TEST_CASE("temporal coverage: trivial cases") {
    const Scenario sc = shell();
    CHECK(fom::temporal_coverage({}, "dcp-1", sc) == 0.0);

    // full-grid window: instants 0..4800 all covered
    std::vector<AccessWindow> full{dcp_window("sat-1", 0.0, 4810.0)};
    CHECK(fom::temporal_coverage(full, "dcp-1", sc) == 1.0);

    CHECK_THROWS_AS(fom::temporal_coverage({}, "nope", sc), std::invalid_argument);
}

TEST_CASE("temporal coverage uses union semantics") {
    const Scenario sc = shell();
    // disjoint halves cover everything
    std::vector<AccessWindow> halves{dcp_window("sat-1", 0.0, 2400.0),
                                     dcp_window("sat-2", 2400.0, 4810.0)};
    CHECK(fom::temporal_coverage(halves, "dcp-1", sc) == 1.0);

    // identical half-windows do not double count
    std::vector<AccessWindow> twice{dcp_window("sat-1", 0.0, 2400.0),
                                    dcp_window("sat-2", 0.0, 2400.0)};
    const double half = fom::temporal_coverage(twice, "dcp-1", sc);
    CHECK(half == doctest::Approx(0.5).epsilon(0.01)); // 240 of 481 instants
    CHECK(half == fom::temporal_coverage({twice[0]}, "dcp-1", sc));
}

TEST_CASE("revisit gaps: single window, paper's one-hour edge, never accessed") {
    const Scenario sc = shell();

    const auto whole = fom::revisit_times({dcp_window("sat-1", 0.0, 4810.0)}, "dcp-1", sc);
    CHECK(whole.max_revisit_s == 0.0);
    CHECK(whole.gaps_s.empty());

    // windows at [0,600) and [4200,4800) leave exactly the 1 h gap
    const auto gap = fom::revisit_times(
        {dcp_window("sat-1", 0.0, 600.0), dcp_window("sat-1", 4200.0, 4800.0)}, "dcp-1", sc);
    REQUIRE(gap.gaps_s.size() == 1);
    CHECK(gap.gaps_s[0] == 3600.0);
    CHECK(gap.max_revisit_s == 3600.0);

    const auto never = fom::revisit_times({}, "dcp-1", sc);
    CHECK(std::isinf(never.max_revisit_s));
}

TEST_CASE("revisit counts leading and trailing gaps") {
    const Scenario sc = shell();
    const auto r = fom::revisit_times({dcp_window("sat-1", 1200.0, 2400.0)}, "dcp-1", sc);
    REQUIRE(r.gaps_s.size() == 2);
    CHECK(r.gaps_s[0] == 1200.0); // grid start to window
    CHECK(r.gaps_s[1] == 2400.0); // window to grid end
    CHECK(r.max_revisit_s == 2400.0);
}

TEST_CASE("gaps plus union window durations cover the whole span") {
    const Scenario sc = shell();
    std::vector<AccessWindow> ws{dcp_window("sat-1", 300.0, 900.0),
                                 dcp_window("sat-2", 600.0, 1500.0),
                                 dcp_window("sat-1", 3000.0, 3600.0)};
    const auto r = fom::revisit_times(ws, "dcp-1", sc);
    double gaps = 0.0;
    for (double g : r.gaps_s) gaps += g;
    // merged unions: [300,1500) and [3000,3600) -> 1800 s of service
    CHECK(gaps + 1800.0 == doctest::Approx(sc.grid.end_s));
}

TEST_CASE("ground access per day") {
    const Scenario sc = shell(2.0 * 86400.0, 60.0);
    CHECK(fom::ground_access_per_day({}, "sat-1", sc) == 0.0);

    // one 600 s pass each simulated day
    std::vector<AccessWindow> daily{ground_window("sat-1", 1000.0, 1600.0),
                                    ground_window("sat-1", 87400.0, 88000.0)};
    CHECK(fom::ground_access_per_day(daily, "sat-1", sc) == doctest::Approx(600.0));

    // two 450 s windows across two days -> 450 s/day
    std::vector<AccessWindow> two{ground_window("sat-1", 0.0, 450.0),
                                  ground_window("sat-1", 100000.0, 100450.0)};
    CHECK(fom::ground_access_per_day(two, "sat-1", sc) == doctest::Approx(450.0));

    // other satellites' windows do not count
    CHECK(fom::ground_access_per_day(daily, "sat-2", sc) == 0.0);
}

TEST_CASE("report: revisit_ok feeds the federation coverage share") {
    Scenario sc = shell();
    sc.thresholds.max_revisit_s = 3000.0;
    sc.dcps.push_back({"dcp-2", {10.0 * deg, 10.0 * deg}, 0.0, 3600.0});

    access::AccessResult res;
    // dcp-1 served continuously, dcp-2 with a 4000 s hole
    res.windows = {dcp_window("sat-1", 0.0, 4810.0),
                   {"sat-1", "dcp-2", WindowKind::DcpContact, 4000.0, 4810.0},
                   ground_window("sat-1", 0.0, 4810.0)};
    const auto report = fom::compute_report(sc, res);
    CHECK(report.per_dcp.at("dcp-1").revisit_ok);
    CHECK_FALSE(report.per_dcp.at("dcp-2").revisit_ok);
    CHECK(report.federation.dcp_coverage_fraction == 0.5);
    CHECK(report.federation.dedicated_ground_stations == 1);
    CHECK(report.per_satellite.at("sat-1").ground_access_s_per_day > 0.0);
}

TEST_CASE("compliance: engineered report passes every rule and flips cleanly") {
    Scenario sc = shell(86400.0, 60.0);
    sc.satellites[1].dedicated = false;
    sc.satellites[1].engagement_fraction = 0.25;
    sc.satellites[1].access_mode = scn::AccessMode::StoreAndForward;
    sc.satellites[1].storage_capacity_bytes = 2e9;
    sc.dcps[0].required_revisit_s = 7200.0;

    access::AccessResult res;
    res.windows = {dcp_window("sat-1", 0.0, 86460.0), ground_window("sat-1", 0.0, 86460.0),
                   ground_window("sat-2", 0.0, 86460.0)};
    auto report = fom::compute_report(sc, res);
    auto rules = fom::check_compliance(report, sc.thresholds, sc);
    for (const auto& r : rules) {
        CAPTURE(r.rule);
        CAPTURE(r.subject);
        CHECK(r.pass);
    }

    auto find = [&](const std::string& rule, const std::string& subject) {
        auto rs = fom::check_compliance(fom::compute_report(sc, res), sc.thresholds, sc);
        for (const auto& r : rs)
            if (r.rule == rule && r.subject == subject) return r.pass;
        FAIL("missing rule ", rule);
        return false;
    };

    SUBCASE("engagement below 10% flips min_engagement") {
        sc.satellites[1].engagement_fraction = 0.05;
        CHECK_FALSE(find("min_engagement", "sat-2"));
    }
    SUBCASE("1 GB capacity flips min_storage") {
        sc.satellites[1].storage_capacity_bytes = 1e9;
        CHECK_FALSE(find("min_storage", "sat-2"));
    }
    SUBCASE("3 W payload flips max_peak_power") {
        sc.satellites[0].peak_power_w = 3.0;
        CHECK_FALSE(find("max_peak_power", "sat-1"));
    }
    SUBCASE("no federated station flips the station count rule") {
        sc.ground_stations[0].federated = false;
        CHECK_FALSE(find("min_dedicated_ground_stations", "federation"));
    }
    SUBCASE("tight per-dcp requirement flips max_revisit only") {
        // one 600 s hole; required revisit tightened below it
        res.windows[0] = dcp_window("sat-1", 600.0, 86460.0);
        sc.dcps[0].required_revisit_s = 300.0;
        CHECK_FALSE(find("max_revisit", "dcp-1"));
        CHECK(find("min_dcp_coverage", "federation")); // one-day bound still met
    }
    SUBCASE("tight federation revisit bound flips min_dcp_coverage only") {
        res.windows[0] = dcp_window("sat-1", 600.0, 86460.0);
        sc.thresholds.max_revisit_s = 300.0;
        CHECK_FALSE(find("min_dcp_coverage", "federation"));
        CHECK(find("max_revisit", "dcp-1")); // 600 s hole within the 7200 s requirement
    }
    SUBCASE("no ground access flips both access-dependent rules") {
        res.windows = {dcp_window("sat-1", 0.0, 86460.0)};
        CHECK_FALSE(find("min_ground_access", "sat-1"));
    }
}

TEST_CASE("compliance results recompute from their own fields") {
    Scenario sc = shell(86400.0, 60.0);
    sc.satellites[1].dedicated = false;
    sc.satellites[1].engagement_fraction = 0.05; // failing on purpose

    access::AccessResult res;
    res.windows = {dcp_window("sat-1", 0.0, 40000.0), ground_window("sat-1", 0.0, 700.0)};
    const auto rules =
        fom::check_compliance(fom::compute_report(sc, res), sc.thresholds, sc);
    for (const auto& r : rules) {
        const bool ge = r.rule == "min_dcp_coverage" || r.rule == "min_engagement" ||
                        r.rule == "min_storage" || r.rule == "min_ground_access" ||
                        r.rule == "min_dedicated_ground_stations" ||
                        r.rule == "downlink_sufficiency";
        const bool expected = ge ? r.observed >= r.threshold : r.observed <= r.threshold;
        CHECK(r.pass == expected);
    }
}

TEST_CASE("adding a satellite never hurts coverage or revisit") {
    Scenario one;
    one.grid = {43200.0, 30.0};
    scn::Satellite sat;
    sat.id = "a";
    sat.elements.semi_major_axis_km = 7000.0;
    sat.elements.inclination_rad = 80.0 * deg;
    sat.fov_dcp = {55.0 * deg, 0.0};
    sat.fov_ground = {55.0 * deg, 0.0};
    sat.access_mode = scn::AccessMode::StoreAndForward;
    sat.storage_capacity_bytes = 1e12;
    sat.downlink_rate_bps = 1e6;
    sat.dcp_uplink_rate_bps = 4800.0;
    sat.dedicated = true;
    one.satellites = {sat};
    one.dcps = {{"d1", {5.0 * deg, 20.0 * deg}, 1000.0, 3600.0},
                {"d2", {-60.0 * deg, 100.0 * deg}, 1000.0, 3600.0}};
    one.ground_stations = {{"g1", {0.0, -56.0 * deg}, 5.0 * deg, true}};

    Scenario two = one;
    scn::Satellite extra = sat;
    extra.id = "b";
    extra.elements.raan_rad = 2.0;
    extra.elements.mean_anomaly_epoch_rad = 3.0;
    two.satellites.push_back(extra);

    const auto r1 = fom::evaluate(one).report;
    const auto r2 = fom::evaluate(two).report;
    for (const auto& dcp : one.dcps) {
        CHECK(r2.per_dcp.at(dcp.id).temporal_coverage_fraction >=
              r1.per_dcp.at(dcp.id).temporal_coverage_fraction);
        CHECK(r2.per_dcp.at(dcp.id).max_revisit_s <= r1.per_dcp.at(dcp.id).max_revisit_s);
    }
}
