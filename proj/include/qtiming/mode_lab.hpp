#pragma once

#include <complex>
#include <vector>

#include "qtiming/mode.hpp"

namespace qtiming {

/// Discrete spectrum of a sampled mode in the analysis convention
/// S(w_m) = sum_j x_j exp(+i w_m t_j) dt, with w_m ascending and centered on 0.
struct Spectrum {
    std::vector<double> omega;                     // rad/s, ascending
    std::vector<std::complex<double>> amplitude;   // S(w_m)
    double d_omega = 0.0;

    std::size_t size() const { return amplitude.size(); }
};

Spectrum analyze(const SampledMode& m);
SampledMode synthesize(const Spectrum& s, const TimeGrid& grid, std::string label);

/// Unit-norm real envelope g0 on the grid. Gaussian: g0 ~ exp(-u^2/(2 tau^2))
/// with tau = fwhm / (2 sqrt(ln 2)); sech: g0 ~ sech(u/tau) with
/// tau = fwhm / (2 arccosh(sqrt 2)). fwhm is the intensity FWHM.
SampledMode make_envelope(const PulseSpec& spec, const TimeGrid& grid);

/// Statistical frequency width: sqrt of the second moment of |S(w)|^2 about
/// w = 0, |S|^2 normalized to unit integral. Expects a carrier-free envelope;
/// rejects modes with > 1e-6 of spectral energy in the outermost 10% of the
/// frequency window (leakage) or with a spectral mean exceeding half the RMS
/// width (looks like a carrier-bearing mode).
double spectral_width(const SampledMode& envelope_mode);

/// d/du evaluated spectrally (multiplication by -i w).
SampledMode derivative(const SampledMode& m);

/// Orthonormal pair {v0, v1} plus the derived timing mode w1 = (i a v0 + v1)/sqrt(a^2+1).
struct ModeBasis {
    PulseSpec spec;
    TimeGrid grid;
    SampledMode v0;            // g0(u) exp(-i omega0 u)
    SampledMode v1;            // -(1/dw) dg0/du exp(-i omega0 u) for real even g0
    SampledMode w1;            // timing mode
    double delta_omega = 0.0;  // rad/s
    double alpha = 0.0;        // omega0 / delta_omega
    double u0 = 0.0;           // 1/sqrt(omega0^2 + delta_omega^2), s
};

ModeBasis build_basis(const PulseSpec& spec, const TimeGrid& grid);

/// Exact translation by delta_u: multiplication by exp(i w delta_u) in the
/// full-field frequency domain. |delta_u| must stay below 10% of the window.
SampledMode shift_mode(const SampledMode& m, double delta_u);

/// First-order expansion coefficient of the shifted mean mode on the timing
/// mode: <w1|v0(.-du)> - <w1|v0>. Equals du/u0 to first order (real part;
/// the imaginary part is O(du^2)). Requires |du| < 0.1 * duration_fwhm.
std::complex<double> project_shift(const ModeBasis& basis, double delta_u);

/// || v0(.-du) - v0 - (du/u0) w1 ||, the second-order remainder of the
/// first-order shift expansion.
double shift_expansion_residual(const ModeBasis& basis, double delta_u);

}  // namespace qtiming
