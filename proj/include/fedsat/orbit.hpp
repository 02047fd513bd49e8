#pragma once

#include <array>
#include <vector>

#include "fedsat/earth.hpp"

namespace fedsat {
namespace orbit {

using Vec3 = std::array<double, 3>;

/**
 * Classical Keplerian elements of one satellite.
 *
 * Angles are radians, normalized to [0, 2pi) on construction/load.
 * epoch_s is the simulation time at which mean_anomaly_epoch_rad holds.
 */
struct OrbitalElements {
    double semi_major_axis_km = 0.0;
    double eccentricity = 0.0;
    double inclination_rad = 0.0;
    double raan_rad = 0.0;
    double arg_perigee_rad = 0.0;
    double mean_anomaly_epoch_rad = 0.0;
    double epoch_s = 0.0;
};

/**
 * Satellite state at one instant, Earth-fixed frame.
 *
 * The subsatellite point is the radial projection onto the spherical
 * Earth; |position_ecef_km| == radius_km + altitude_km.
 */
struct SatelliteState {
    double time_s = 0.0;
    Vec3 position_ecef_km{0.0, 0.0, 0.0};
    double subsatellite_lat_rad = 0.0;
    double subsatellite_lon_rad = 0.0;
    double altitude_km = 0.0;
};

/// Uniform sampling grid, instants at i*step_s for i in [0, floor(end_s/step_s)].
struct TimeGrid {
    double end_s = 0.0;
    double step_s = 10.0;

    std::size_t instant_count() const;
    double instant(std::size_t i) const { return static_cast<double>(i) * step_s; }
};

/// Wrap an angle into [0, 2pi).
double wrap_two_pi(double angle_rad);

/// Wrap an angle into [-pi, pi).
double wrap_pi(double angle_rad);

/// True when the elements describe a closed orbit with perigee above the surface.
bool elements_valid(const OrbitalElements& el);

/**
 * Solve Kepler's equation M = E - e*sin(E) by Newton iteration.
 *
 * Returns E in the same revolution as M, with residual below 1e-10 rad.
 * Throws std::runtime_error carrying the final residual if 50 iterations
 * do not converge (cannot happen for e < 1).
 */
double solve_kepler(double mean_anomaly_rad, double eccentricity);

/// Orbital period T = 2*pi*sqrt(a^3/mu).
double orbital_period(const OrbitalElements& el);

/// Two-body position in the inertial frame at simulation time t.
Vec3 eci_position(const OrbitalElements& el, double time_s);

/**
 * Closed-form two-body propagation to simulation time t.
 *
 * Mean anomaly advances at 2pi/T, Kepler is solved, the perifocal
 * position is rotated into the inertial frame and then by Earth
 * rotation (frames aligned at t = 0) into the Earth-fixed frame.
 * Deterministic: identical inputs give bit-identical outputs.
 * Throws std::invalid_argument on invalid elements.
 */
SatelliteState propagate_to(const OrbitalElements& el, double time_s);

/// One state per grid instant; element-wise equal to repeated propagate_to calls.
std::vector<SatelliteState> ground_track(const OrbitalElements& el, const TimeGrid& grid);

} // namespace orbit
} // namespace fedsat
