#include "qtiming/mode_lab.hpp"

#include <cmath>
#include <stdexcept>

#include "qtiming/constants.hpp"
#include "qtiming/fft.hpp"

namespace qtiming {

namespace {

using cplx = std::complex<double>;

void check_grid(const TimeGrid& grid) {
    if (grid.n_points < 16 || !fft::is_power_of_two(grid.n_points) ||
        !(grid.t_step > 0.0)) {
        throw std::invalid_argument("invalid time grid");
    }
}

}  // namespace

// With t_j = (j - n/2) dt and w_m = (m - n/2) dw, dw = 2 pi/(n dt), the
// centered analysis transform reduces to an FFT on sign-alternated samples:
//   S_m = dt (-1)^m sum_j [x_j (-1)^j] exp(+2 pi i m j / n)      (n/2 even)
Spectrum analyze(const SampledMode& m) {
    check_grid(m.grid);
    const std::size_t n = m.grid.n_points;
    if (m.size() != n) throw std::invalid_argument("analyze: amplitude size != n_points");
    const double dt = m.grid.t_step;

    std::vector<cplx> work(n);
    for (std::size_t j = 0; j < n; ++j) {
        work[j] = (j & 1) ? -m.amplitude[j] : m.amplitude[j];
    }
    fft::transform(work, +1);

    Spectrum s;
    s.d_omega = 2.0 * pi / (dt * static_cast<double>(n));
    s.omega.resize(n);
    s.amplitude.resize(n);
    const double half = static_cast<double>(n / 2);
    for (std::size_t k = 0; k < n; ++k) {
        s.omega[k] = (static_cast<double>(k) - half) * s.d_omega;
        s.amplitude[k] = (k & 1) ? -dt * work[k] : dt * work[k];
    }
    return s;
}

SampledMode synthesize(const Spectrum& s, const TimeGrid& grid, std::string label) {
    check_grid(grid);
    const std::size_t n = grid.n_points;
    if (s.size() != n) throw std::invalid_argument("synthesize: spectrum size != n_points");

    std::vector<cplx> work(n);
    for (std::size_t k = 0; k < n; ++k) {
        work[k] = (k & 1) ? -s.amplitude[k] : s.amplitude[k];
    }
    fft::transform(work, -1);

    SampledMode m;
    m.grid = grid;
    m.label = std::move(label);
    m.amplitude.resize(n);
    const double scale = 1.0 / (grid.t_step * static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        m.amplitude[j] = (j & 1) ? -scale * work[j] : scale * work[j];
    }
    return m;
}

SampledMode make_envelope(const PulseSpec& spec, const TimeGrid& grid) {
    spec.validate();
    check_grid(grid);
    if (grid.window() < 20.0 * spec.duration_fwhm) {
        throw std::invalid_argument("make_envelope: window under 20 pulse durations");
    }

    SampledMode m;
    m.grid = grid;
    m.label = "g0";
    m.amplitude.resize(grid.n_points);

    if (spec.envelope == Envelope::gaussian) {
        const double tau = spec.duration_fwhm / (2.0 * std::sqrt(std::log(2.0)));
        const double amp = std::pow(pi * tau * tau, -0.25);
        for (std::size_t k = 0; k < grid.n_points; ++k) {
            const double u = grid.time_at(k);
            m.amplitude[k] = amp * std::exp(-(u * u) / (2.0 * tau * tau));
        }
    } else {
        const double tau = spec.duration_fwhm / (2.0 * std::acosh(std::sqrt(2.0)));
        const double amp = 1.0 / std::sqrt(2.0 * tau);
        for (std::size_t k = 0; k < grid.n_points; ++k) {
            // fabs keeps the sampled envelope bitwise even on the centered grid
            const double u = std::fabs(grid.time_at(k));
            m.amplitude[k] = amp / std::cosh(u / tau);
        }
    }
    normalize(m);
    return m;
}

double spectral_width(const SampledMode& envelope_mode) {
    const Spectrum s = analyze(envelope_mode);
    const std::size_t n = s.size();

    double e0 = 0.0, e1 = 0.0, e2 = 0.0, edge = 0.0;
    const double omega_edge = 0.9 * std::fabs(s.omega.front());
    for (std::size_t k = 0; k < n; ++k) {
        const double p = std::norm(s.amplitude[k]);
        e0 += p;
        e1 += s.omega[k] * p;
        e2 += s.omega[k] * s.omega[k] * p;
        if (std::fabs(s.omega[k]) > omega_edge) edge += p;
    }
    if (!(e0 > 0.0)) throw std::invalid_argument("spectral_width: empty spectrum");
    if (edge / e0 > 1e-6) {
        throw std::invalid_argument(
            "spectral_width: > 1e-6 of the spectral energy sits in the outermost "
            "10% of the frequency window (leakage); refine the grid");
    }
    const double mean = e1 / e0;
    const double second = e2 / e0;
    if (mean * mean > 0.25 * second) {
        throw std::invalid_argument(
            "spectral_width: spectral mean comparable to the width; pass the "
            "carrier-free envelope, not the full field");
    }
    return std::sqrt(second);
}

SampledMode derivative(const SampledMode& m) {
    Spectrum s = analyze(m);
    for (std::size_t k = 0; k < s.size(); ++k) {
        s.amplitude[k] *= cplx(0.0, -s.omega[k]);
    }
    return synthesize(s, m.grid, m.label + "'");
}

ModeBasis build_basis(const PulseSpec& spec, const TimeGrid& grid) {
    ModeBasis basis;
    basis.spec = spec;
    basis.grid = grid;

    const SampledMode g0 = make_envelope(spec, grid);
    basis.delta_omega = spectral_width(g0);
    basis.alpha = spec.omega0 / basis.delta_omega;
    basis.u0 = 1.0 / std::sqrt(spec.omega0 * spec.omega0 +
                               basis.delta_omega * basis.delta_omega);

    const std::size_t n = grid.n_points;
    basis.v0.grid = grid;
    basis.v0.label = "v0";
    basis.v0.amplitude.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = -spec.omega0 * grid.time_at(k);
        basis.v0.amplitude[k] = g0.amplitude[k] * std::polar(1.0, phase);
    }

    // v1 by Gram-Schmidt on -dv0/du; for real even envelopes this is exactly
    // -(1/dw) dg0/du exp(-i omega0 u)
    SampledMode dv0 = derivative(basis.v0);
    SampledMode raw;
    raw.grid = grid;
    raw.label = "v1";
    raw.amplitude.resize(n);
    for (std::size_t k = 0; k < n; ++k) raw.amplitude[k] = -dv0.amplitude[k];
    const cplx overlap = inner_product(basis.v0, raw);
    for (std::size_t k = 0; k < n; ++k) {
        raw.amplitude[k] -= overlap * basis.v0.amplitude[k];
    }
    normalize(raw);
    basis.v1 = std::move(raw);

    const double denom = std::sqrt(basis.alpha * basis.alpha + 1.0);
    basis.w1.grid = grid;
    basis.w1.label = "w1";
    basis.w1.amplitude.resize(n);
    const cplx ia(0.0, basis.alpha);
    for (std::size_t k = 0; k < n; ++k) {
        basis.w1.amplitude[k] =
            (ia * basis.v0.amplitude[k] + basis.v1.amplitude[k]) / denom;
    }
    return basis;
}

SampledMode shift_mode(const SampledMode& m, double delta_u) {
    if (!(std::fabs(delta_u) < 0.1 * m.grid.window())) {
        throw std::invalid_argument(
            "shift_mode: |delta_u| must stay below 10% of the grid window");
    }
    Spectrum s = analyze(m);
    for (std::size_t k = 0; k < s.size(); ++k) {
        s.amplitude[k] *= std::polar(1.0, s.omega[k] * delta_u);
    }
    return synthesize(s, m.grid, m.label);
}

std::complex<double> project_shift(const ModeBasis& basis, double delta_u) {
    if (!(std::fabs(delta_u) < 0.1 * basis.spec.duration_fwhm)) {
        throw std::invalid_argument(
            "project_shift: |delta_u| must stay below 10% of duration_fwhm "
            "(first-order regime)");
    }
    const SampledMode shifted = shift_mode(basis.v0, delta_u);
    return inner_product(basis.w1, shifted) - inner_product(basis.w1, basis.v0);
}

double shift_expansion_residual(const ModeBasis& basis, double delta_u) {
    const SampledMode shifted = shift_mode(basis.v0, delta_u);
    const double c = delta_u / basis.u0;
    double acc = 0.0;
    for (std::size_t k = 0; k < shifted.size(); ++k) {
        const std::complex<double> r = shifted.amplitude[k] -
                                       basis.v0.amplitude[k] -
                                       c * basis.w1.amplitude[k];
        acc += std::norm(r);
    }
    return std::sqrt(acc * basis.grid.t_step);
}

}  // namespace qtiming
