#include "qtiming/mode.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace qtiming {

std::complex<double> inner_product(const SampledMode& a, const SampledMode& b) {
    if (a.grid != b.grid || a.size() != b.size()) {
        throw std::invalid_argument("inner_product: modes live on different grids");
    }
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) {
        acc += std::conj(a.amplitude[k]) * b.amplitude[k];
    }
    return acc * a.grid.t_step;
}

double grid_norm(const SampledMode& m) {
    double acc = 0.0;
    for (const auto& z : m.amplitude) acc += std::norm(z);
    return std::sqrt(acc * m.grid.t_step);
}

void normalize(SampledMode& m) {
    const double n = grid_norm(m);
    if (!(n > 0.0)) throw std::invalid_argument("normalize: zero-norm mode");
    for (auto& z : m.amplitude) z /= n;
}

void write_mode_csv(const SampledMode& m, std::ostream& out) {
    out << "t_seconds,re_amplitude,im_amplitude\n";
    char line[128];
    for (std::size_t k = 0; k < m.size(); ++k) {
        std::snprintf(line, sizeof(line), "%.16e,%.16e,%.16e\n", m.grid.time_at(k),
                      m.amplitude[k].real(), m.amplitude[k].imag());
        out << line;
    }
}

}  // namespace qtiming
