#pragma once

#include <cstddef>
#include <string>

namespace qtiming {

enum class Envelope { gaussian, sech };

Envelope envelope_from_string(const std::string& name);
const char* to_string(Envelope e);

/// Uniform sampling grid for the light-cone variable u, centered on u = 0.
struct TimeGrid {
    double t_start = 0.0;
    double t_step = 0.0;
    std::size_t n_points = 0;

    // evaluated about the center so sample times are exactly antisymmetric
    // on centered grids (t_start = -t_step * n_points/2 makes offset == 0)
    double time_at(std::size_t k) const {
        const double center = t_step * static_cast<double>(n_points / 2);
        const double offset = t_start + center;
        return t_step * (static_cast<double>(k) - static_cast<double>(n_points / 2)) +
               offset;
    }
    double window() const { return t_step * static_cast<double>(n_points); }

    bool operator==(const TimeGrid&) const = default;
};

/// Physical description of the pulse train within one detection window.
struct PulseSpec {
    double omega0 = 0.0;                    // carrier angular frequency, rad/s
    Envelope envelope = Envelope::gaussian;
    double duration_fwhm = 0.0;             // intensity FWHM, s
    double photon_number = 0.0;             // mean photons per detection window
    double theta = 0.0;                     // global phase, rad

    void validate() const;
};

/// Centered grid spanning guard_factor * duration_fwhm. n_points must be a
/// power of two >= 16 and the resulting step must resolve the carrier
/// (t_step < pi/omega0, i.e. at least two samples per field oscillation).
TimeGrid make_grid(const PulseSpec& spec, double guard_factor = 40.0,
                   std::size_t n_points = 65536);

}  // namespace qtiming
