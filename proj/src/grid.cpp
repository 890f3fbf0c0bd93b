#include "qtiming/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "qtiming/constants.hpp"
#include "qtiming/fft.hpp"

namespace qtiming {

Envelope envelope_from_string(const std::string& name) {
    if (name == "gaussian") return Envelope::gaussian;
    if (name == "sech") return Envelope::sech;
    throw std::invalid_argument("unknown envelope family '" + name +
                                "' (expected gaussian or sech)");
}

const char* to_string(Envelope e) {
    return e == Envelope::gaussian ? "gaussian" : "sech";
}

void PulseSpec::validate() const {
    if (!(omega0 > 0.0)) throw std::invalid_argument("PulseSpec: omega0 must be > 0");
    if (!(duration_fwhm > 0.0))
        throw std::invalid_argument("PulseSpec: duration_fwhm must be > 0");
    if (!(photon_number > 0.0))
        throw std::invalid_argument("PulseSpec: photon_number must be > 0");
    if (!std::isfinite(theta)) throw std::invalid_argument("PulseSpec: theta must be finite");
}

TimeGrid make_grid(const PulseSpec& spec, double guard_factor, std::size_t n_points) {
    spec.validate();
    if (!(guard_factor >= 20.0)) {
        throw std::invalid_argument("make_grid: guard_factor must be >= 20");
    }
    if (n_points < 16 || !fft::is_power_of_two(n_points)) {
        throw std::invalid_argument("make_grid: n_points must be a power of two >= 16");
    }
    const double window = guard_factor * spec.duration_fwhm;
    const double dt = window / static_cast<double>(n_points);
    if (!(dt < pi / spec.omega0)) {
        throw std::invalid_argument(
            "make_grid: carrier undersampled (t_step >= pi/omega0); "
            "increase n_points or reduce the window");
    }
    TimeGrid grid;
    grid.t_step = dt;
    grid.n_points = n_points;
    grid.t_start = -dt * static_cast<double>(n_points / 2);
    return grid;
}

}  // namespace qtiming
