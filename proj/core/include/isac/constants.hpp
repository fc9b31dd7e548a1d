#pragma once

#include <numbers>

namespace isac {

// Propagation speed. 3e8 keeps range/Doppler arithmetic aligned with the
// usual radar bookkeeping (range resolution c/2B etc).
inline constexpr double kSpeedOfLight = 3.0e8;

inline constexpr double kPi = std::numbers::pi;

// ULA half-power beamwidth constants for half-wavelength spacing:
// full width 1.78/(N sin(phi)), half width 0.89/(N sin(phi)).
inline constexpr double kHpbwFull = 1.78;
inline constexpr double kHpbwHalf = 0.89;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }

}  // namespace isac
