#pragma once

namespace qtiming {

// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double pi = 3.14159265358979323846;

/// Carrier angular frequency for a vacuum wavelength, rad/s.
inline constexpr double omega0_from_wavelength(double wavelength_m) {
    return 2.0 * pi * speed_of_light / wavelength_m;
}

}  // namespace qtiming
