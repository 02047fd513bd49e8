#pragma once

namespace fedsat {
namespace earth {

// Spherical Earth model, shared by every module.
inline constexpr double radius_km = 6378.137;
inline constexpr double mu_km3_s2 = 398600.4418;
inline constexpr double rotation_rate_rad_s = 7.2921159e-5;

} // namespace earth
} // namespace fedsat
