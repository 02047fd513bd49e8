#include "fedsat/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace fedsat {
namespace geom {

double central_angle(const GroundPoint& a, const GroundPoint& b) {
    const double sin_dlat = std::sin((b.lat_rad - a.lat_rad) / 2.0);
    const double sin_dlon = std::sin((b.lon_rad - a.lon_rad) / 2.0);
    const double h = sin_dlat * sin_dlat +
                     std::cos(a.lat_rad) * std::cos(b.lat_rad) * sin_dlon * sin_dlon;
    return 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
}

namespace {
double subpoint_angle(const orbit::SatelliteState& state, const GroundPoint& target) {
    const GroundPoint subsat{state.subsatellite_lat_rad, state.subsatellite_lon_rad};
    return central_angle(subsat, target);
}
} // namespace

double elevation_angle(const orbit::SatelliteState& state, const GroundPoint& target) {
    const double lambda = subpoint_angle(state, target);
    const double r = earth::radius_km + state.altitude_km;
    return std::atan2(std::cos(lambda) - earth::radius_km / r, std::sin(lambda));
}

double nadir_angle(const orbit::SatelliteState& state, const GroundPoint& target) {
    const double lambda = subpoint_angle(state, target);
    const double r = earth::radius_km + state.altitude_km;
    return std::atan2(std::sin(lambda), r / earth::radius_km - std::cos(lambda));
}

bool in_fov(const orbit::SatelliteState& state, const GroundPoint& target,
            const FieldOfView& fov) {
    return nadir_angle(state, target) <= fov.half_angle_rad &&
           elevation_angle(state, target) >= fov.min_elevation_rad;
}

} // namespace geom
} // namespace fedsat
