// Independent reference implementations the tests check the library
// against. Nothing here may call into the code paths under test beyond
// the shared primitive types; time evolution, window assembly and
// storage accounting are re-derived from scratch.
#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "fedsat/access.hpp"
#include "fedsat/scenario.hpp"

namespace oracle {

using fedsat::access::AccessWindow;
using fedsat::access::WindowKind;
using fedsat::orbit::OrbitalElements;
using Vec3 = std::array<double, 3>;

inline constexpr double earth_radius_km = 6378.137;
inline constexpr double earth_mu = 398600.4418;

struct StateRV {
    Vec3 r;
    Vec3 v;
};

/// Kepler's equation solved by bisection (no Newton shared with the
/// implementation under test).
inline double kepler_bisect(double mean_anomaly, double e) {
    double lo = mean_anomaly - 1.0, hi = mean_anomaly + 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid - e * std::sin(mid) - mean_anomaly > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// Inertial position/velocity at the element epoch.
inline StateRV initial_state(const OrbitalElements& el) {
    const double a = el.semi_major_axis_km;
    const double e = el.eccentricity;
    const double E = kepler_bisect(el.mean_anomaly_epoch_rad, e);
    const double nu = 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(E / 2.0),
                                       std::sqrt(1.0 - e) * std::cos(E / 2.0));
    const double p = a * (1.0 - e * e);
    const double r = p / (1.0 + e * std::cos(nu));

    const Vec3 r_pf{r * std::cos(nu), r * std::sin(nu), 0.0};
    const double c = std::sqrt(earth_mu / p);
    const Vec3 v_pf{-c * std::sin(nu), c * (e + std::cos(nu)), 0.0};

    const double cr = std::cos(el.raan_rad), sr = std::sin(el.raan_rad);
    const double ci = std::cos(el.inclination_rad), si = std::sin(el.inclination_rad);
    const double cw = std::cos(el.arg_perigee_rad), sw = std::sin(el.arg_perigee_rad);
    const double m[3][3] = {
        {cr * cw - sr * sw * ci, -cr * sw - sr * cw * ci, sr * si},
        {sr * cw + cr * sw * ci, -sr * sw + cr * cw * ci, -cr * si},
        {sw * si, cw * si, ci},
    };
    auto rot = [&](const Vec3& x) {
        return Vec3{m[0][0] * x[0] + m[0][1] * x[1] + m[0][2] * x[2],
                    m[1][0] * x[0] + m[1][1] * x[1] + m[1][2] * x[2],
                    m[2][0] * x[0] + m[2][1] * x[1] + m[2][2] * x[2]};
    };
    return {rot(r_pf), rot(v_pf)};
}

inline Vec3 accel(const Vec3& r) {
    const double n = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    const double k = -earth_mu / (n * n * n);
    return {k * r[0], k * r[1], k * r[2]};
}

/// Fixed-step RK4 integration of the two-body equations.
inline StateRV rk4_propagate(StateRV s, double duration_s, double step_s) {
    auto axpy = [](const Vec3& a, const Vec3& b, double k) {
        return Vec3{a[0] + k * b[0], a[1] + k * b[1], a[2] + k * b[2]};
    };
    double t = 0.0;
    while (t < duration_s - 1e-12) {
        const double h = std::min(step_s, duration_s - t);
        const Vec3 k1r = s.v, k1v = accel(s.r);
        const Vec3 k2r = axpy(s.v, k1v, h / 2.0), k2v = accel(axpy(s.r, k1r, h / 2.0));
        const Vec3 k3r = axpy(s.v, k2v, h / 2.0), k3v = accel(axpy(s.r, k2r, h / 2.0));
        const Vec3 k4r = axpy(s.v, k3v, h), k4v = accel(axpy(s.r, k3r, h));
        for (int i = 0; i < 3; ++i) {
            s.r[i] += h / 6.0 * (k1r[i] + 2.0 * k2r[i] + 2.0 * k3r[i] + k4r[i]);
            s.v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        }
        t += h;
    }
    return s;
}

/// Per-instant predicate scan plus run-length encoding, written as the
/// plainest possible loops. Storage bookkeeping re-derived inline.
struct BruteForceResult {
    // pair index = satellite index * (dcps + stations) + target index
    std::vector<std::vector<std::uint8_t>> satisfied;
    std::vector<AccessWindow> windows;
    std::map<std::string, double> collected, downlinked, dropped;
};

inline BruteForceResult brute_force_scan(const fedsat::scn::Scenario& sc) {
    namespace geom = fedsat::geom;
    namespace orbit = fedsat::orbit;
    using fedsat::scn::AccessMode;

    BruteForceResult res;
    const std::size_t n = sc.grid.instant_count();
    const std::size_t targets = sc.dcps.size() + sc.ground_stations.size();
    res.satisfied.assign(sc.satellites.size() * targets, std::vector<std::uint8_t>(n, 0));

    for (std::size_t s = 0; s < sc.satellites.size(); ++s) {
        const auto& sat = sc.satellites[s];
        const bool stores = sat.access_mode == AccessMode::StoreAndForward;
        double occ = 0.0, collected = 0.0, downlinked = 0.0, dropped = 0.0;
        std::vector<double> remaining(sc.dcps.size(), 0.0);
        std::vector<bool> open(sc.dcps.size(), false);
        const double up_step = sat.dcp_uplink_rate_bps * sc.grid.step_s / 8.0;
        const double down_step = sat.downlink_rate_bps * sc.grid.step_s / 8.0;

        for (std::size_t i = 0; i < n; ++i) {
            const double t = sc.grid.instant(i);
            const auto st = orbit::propagate_to(sat.elements, t);

            bool any_gs = false;
            for (std::size_t g = 0; g < sc.ground_stations.size(); ++g) {
                const auto& gs = sc.ground_stations[g];
                const bool vis =
                    geom::nadir_angle(st, gs.location) <= sat.fov_ground.half_angle_rad &&
                    geom::elevation_angle(st, gs.location) >=
                        std::max(sat.fov_ground.min_elevation_rad, gs.min_elevation_rad);
                res.satisfied[s * targets + sc.dcps.size() + g][i] = vis;
                any_gs = any_gs || vis;
            }

            bool duty = true;
            if (!sat.dedicated) {
                const double p = sc.thresholds.planning_period_s;
                double u = std::fmod(t, p);
                if (u < 0.0) u += p;
                duty = u < sat.engagement_fraction * p;
            }

            for (std::size_t d = 0; d < sc.dcps.size(); ++d) {
                const auto& dcp = sc.dcps[d];
                const bool in_view = geom::in_fov(st, dcp.location, sat.fov_dcp);
                bool ok = in_view && duty;
                if (stores)
                    ok = ok && (sat.storage_capacity_bytes - occ) > 0.0;
                else
                    ok = ok && any_gs;
                res.satisfied[s * targets + d][i] = ok;

                if (stores) {
                    if (ok && !open[d]) {
                        open[d] = true;
                        remaining[d] = dcp.data_per_pass_bytes;
                    }
                    if (ok) {
                        const double tx = std::min(remaining[d], up_step);
                        const double in = std::min(tx, sat.storage_capacity_bytes - occ);
                        occ += in;
                        collected += in;
                        dropped += tx - in;
                        remaining[d] -= tx;
                    } else if (open[d]) {
                        open[d] = false;
                        dropped += remaining[d];
                        remaining[d] = 0.0;
                    }
                }
            }
            if (stores && any_gs) {
                const double out = std::min(occ, down_step);
                occ -= out;
                downlinked += out;
            }
        }
        if (stores) {
            for (std::size_t d = 0; d < sc.dcps.size(); ++d)
                if (open[d]) dropped += remaining[d];
            res.collected[sat.id] = collected;
            res.downlinked[sat.id] = downlinked;
            res.dropped[sat.id] = dropped;
        }

        for (std::size_t k = 0; k < targets; ++k) {
            const auto& row = res.satisfied[s * targets + k];
            const bool is_dcp = k < sc.dcps.size();
            const std::string target =
                is_dcp ? sc.dcps[k].id : sc.ground_stations[k - sc.dcps.size()].id;
            const WindowKind kind = !is_dcp ? WindowKind::GroundContact
                                   : stores ? WindowKind::DcpContact
                                            : WindowKind::SimultaneousContact;
            std::size_t i = 0;
            while (i < n) {
                if (!row[i]) {
                    ++i;
                    continue;
                }
                std::size_t j = i;
                while (j + 1 < n && row[j + 1]) ++j;
                res.windows.push_back({sat.id, target, kind, sc.grid.instant(i),
                                       sc.grid.instant(j) + sc.grid.step_s});
                i = j + 1;
            }
        }
    }

    std::sort(res.windows.begin(), res.windows.end(),
              [](const AccessWindow& a, const AccessWindow& b) {
                  return std::tie(a.satellite_id, a.target_id, a.start_s) <
                         std::tie(b.satellite_id, b.target_id, b.start_s);
              });
    return res;
}

inline bool windows_equal(const std::vector<AccessWindow>& a,
                          const std::vector<AccessWindow>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].satellite_id != b[i].satellite_id || a[i].target_id != b[i].target_id ||
            a[i].kind != b[i].kind || a[i].start_s != b[i].start_s || a[i].end_s != b[i].end_s)
            return false;
    return true;
}

inline std::string scenario_path(const std::string& name) {
    return std::string(FEDSAT_SCENARIO_DIR) + "/" + name;
}

} // namespace oracle
