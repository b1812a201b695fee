#pragma once

namespace qkdwdm::constants {

// Speed of light in the unit system used throughout the dispersion math
// (wavelengths in nm, times in ps, lengths in km).
inline constexpr double kSpeedOfLightNmPerPs = 299792.458;
inline constexpr double kSpeedOfLightMPerS = 2.99792458e8;
inline constexpr double kPlanckJs = 6.62607015e-34;

inline constexpr double kLn2 = 0.6931471805599453;
inline constexpr double kLn10 = 2.302585092994046;

// dB/km -> 1/km (power attenuation coefficient in natural units).
inline constexpr double kDbToNaturalPerKm = kLn10 / 10.0;

// Default quantum-channel center wavelength.
inline constexpr double kDefaultLambdaNm = 1550.0;

}  // namespace qkdwdm::constants
