#include "fedsat/orbit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fedsat {
namespace orbit {

namespace {
constexpr double two_pi = 2.0 * M_PI;
}

std::size_t TimeGrid::instant_count() const {
    if (end_s <= 0.0 || step_s <= 0.0) return 0;
    return static_cast<std::size_t>(std::floor(end_s / step_s)) + 1;
}

double wrap_two_pi(double angle_rad) {
    double a = std::fmod(angle_rad, two_pi);
    if (a < 0.0) a += two_pi;
    return a;
}

double wrap_pi(double angle_rad) {
    double a = wrap_two_pi(angle_rad);
    if (a >= M_PI) a -= two_pi;
    return a;
}

bool elements_valid(const OrbitalElements& el) {
    if (!(el.eccentricity >= 0.0 && el.eccentricity < 1.0)) return false;
    if (!std::isfinite(el.semi_major_axis_km)) return false;
    // perigee above the surface
    return el.semi_major_axis_km * (1.0 - el.eccentricity) > earth::radius_km;
}

double solve_kepler(double mean_anomaly_rad, double eccentricity) {
    if (!(eccentricity >= 0.0 && eccentricity < 1.0))
        throw std::invalid_argument("solve_kepler: eccentricity must be in [0,1)");
    if (!std::isfinite(mean_anomaly_rad))
        throw std::invalid_argument("solve_kepler: mean anomaly must be finite");

    // Solve in the principal revolution, then shift back so E stays in
    // the same revolution as M. e*sin is 2pi-periodic so the residual
    // is unchanged by the shift.
    const double m = wrap_two_pi(mean_anomaly_rad);
    const double shift = mean_anomaly_rad - m;

    double e_anom = m + eccentricity * std::sin(m);
    double residual = e_anom - eccentricity * std::sin(e_anom) - m;
    int iter = 0;
    while (std::fabs(residual) > 1e-10) {
        if (++iter > 50) {
            std::ostringstream msg;
            msg << "solve_kepler: no convergence after 50 iterations, residual "
                << residual << " rad (M=" << mean_anomaly_rad
                << ", e=" << eccentricity << ")";
            throw std::runtime_error(msg.str());
        }
        const double derivative = 1.0 - eccentricity * std::cos(e_anom);
        e_anom -= residual / derivative;
        residual = e_anom - eccentricity * std::sin(e_anom) - m;
    }
    return e_anom + shift;
}

double orbital_period(const OrbitalElements& el) {
    const double a = el.semi_major_axis_km;
    return two_pi * std::sqrt(a * a * a / earth::mu_km3_s2);
}

Vec3 eci_position(const OrbitalElements& el, double time_s) {
    const double a = el.semi_major_axis_km;
    const double e = el.eccentricity;
    const double mean_motion = std::sqrt(earth::mu_km3_s2 / (a * a * a));
    const double mean_anomaly =
        el.mean_anomaly_epoch_rad + mean_motion * (time_s - el.epoch_s);
    const double e_anom = solve_kepler(wrap_two_pi(mean_anomaly), e);

    const double true_anom = 2.0 * std::atan2(std::sqrt(1.0 + e) * std::sin(e_anom / 2.0),
                                              std::sqrt(1.0 - e) * std::cos(e_anom / 2.0));
    const double radius = a * (1.0 - e * std::cos(e_anom));

    // perifocal position
    const double xp = radius * std::cos(true_anom);
    const double yp = radius * std::sin(true_anom);

    // perifocal -> inertial: R3(-raan) R1(-i) R3(-argp)
    const double cr = std::cos(el.raan_rad), sr = std::sin(el.raan_rad);
    const double ci = std::cos(el.inclination_rad), si = std::sin(el.inclination_rad);
    const double cw = std::cos(el.arg_perigee_rad), sw = std::sin(el.arg_perigee_rad);

    const double x1 = cw * xp - sw * yp;
    const double y1 = sw * xp + cw * yp;
    const double x2 = x1;
    const double y2 = ci * y1;
    const double z2 = si * y1;
    return Vec3{cr * x2 - sr * y2, sr * x2 + cr * y2, z2};
}

SatelliteState propagate_to(const OrbitalElements& el, double time_s) {
    if (!elements_valid(el))
        throw std::invalid_argument("propagate_to: invalid orbital elements");

    const Vec3 eci = eci_position(el, time_s);

    // inertial -> Earth-fixed; both frames coincide at t = 0
    const double theta = earth::rotation_rate_rad_s * time_s;
    const double ct = std::cos(theta), st = std::sin(theta);
    const Vec3 ecef{ct * eci[0] + st * eci[1], -st * eci[0] + ct * eci[1], eci[2]};

    const double r = std::sqrt(ecef[0] * ecef[0] + ecef[1] * ecef[1] + ecef[2] * ecef[2]);

    SatelliteState state;
    state.time_s = time_s;
    state.position_ecef_km = ecef;
    state.subsatellite_lat_rad = std::asin(ecef[2] / r);
    state.subsatellite_lon_rad = wrap_pi(std::atan2(ecef[1], ecef[0]));
    state.altitude_km = r - earth::radius_km;
    return state;
}

std::vector<SatelliteState> ground_track(const OrbitalElements& el, const TimeGrid& grid) {
    std::vector<SatelliteState> states;
    const std::size_t n = grid.instant_count();
    states.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        states.push_back(propagate_to(el, grid.instant(i)));
    return states;
}

} // namespace orbit
} // namespace fedsat
