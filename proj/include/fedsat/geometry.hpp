#pragma once

#include "fedsat/orbit.hpp"

namespace fedsat {
namespace geom {

/// Fixed ground target (DCP or ground station), spherical Earth.
struct GroundPoint {
    double lat_rad = 0.0; // [-pi/2, pi/2]
    double lon_rad = 0.0; // [-pi, pi)
};

/**
 * Visibility cone of a satellite toward one target class: a
 * nadir-pointing circular cone plus a target-side elevation mask.
 * half_angle_rad = pi/2 disables the cone, leaving an elevation-only
 * (omnidirectional transponder) model.
 */
struct FieldOfView {
    double half_angle_rad = 0.0;    // [0, pi/2]
    double min_elevation_rad = 0.0; // [0, pi/2)
};

/// Great-circle angle between two ground points (haversine form).
double central_angle(const GroundPoint& a, const GroundPoint& b);

/**
 * Elevation of the satellite above the target's local horizon:
 * atan2(cos(lambda) - R/r, sin(lambda)), negative below the horizon.
 */
double elevation_angle(const orbit::SatelliteState& state, const GroundPoint& target);

/// Angle at the satellite between nadir and the line of sight to the target.
double nadir_angle(const orbit::SatelliteState& state, const GroundPoint& target);

/// True iff the target is inside the cone and above the elevation mask.
bool in_fov(const orbit::SatelliteState& state, const GroundPoint& target,
            const FieldOfView& fov);

} // namespace geom
} // namespace fedsat
