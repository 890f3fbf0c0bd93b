#pragma once

#include <memory>
#include <string_view>

#include "qtiming/mode_lab.hpp"

namespace qtiming {

/// Mean quadratures and variances of one mode. Convention: vacuum/coherent
/// variance 1, coherent amplitude |mean| = 2 sqrt(N). Variances are referenced
/// to the LO phase (var_p of v0 is the phase-quadrature variance entering the
/// homodyne noise; var_q of v1 the amplitude one).
struct QuadratureState {
    double mean_q = 0.0;
    double mean_p = 0.0;
    double var_q = 1.0;
    double var_p = 1.0;

    void validate() const;
};

/// Squeezing parameters, applied along P of v0 and Q of v1 (r >= 0; r = 0 is
/// coherent/vacuum). Standard deviations shrink by exp(-r) on the squeezed
/// quadrature and grow by exp(+r) on the conjugate.
struct SqueezingSpec {
    double r_phase_v0 = 0.0;
    double r_amp_v1 = 0.0;
};

/// Gaussian state of the signal field over the tracked modes {v0, v1}.
/// All higher modes are vacuum. The coherent amplitude lives in v0.
struct FieldState {
    std::shared_ptr<const ModeBasis> basis;
    double photon_number = 0.0;
    double theta = 0.0;  // global phase, rad
    QuadratureState v0;
    QuadratureState v1;

    const QuadratureState& mode(std::string_view label) const;
};

/// N = P * T / (hbar * omega0)
double photons_from_power(double power_w, double detection_time_s, double omega0);

/// Coherent state: v0 means (2 sqrt(N) cos theta, 2 sqrt(N) sin theta),
/// unit variances everywhere, v1 vacuum.
FieldState coherent_state(std::shared_ptr<const ModeBasis> basis, double photon_number,
                          double theta);

/// Multiplies var_p(v0) by exp(-2 r_phase_v0) and var_q(v0) by exp(+2 r_phase_v0);
/// likewise var_q(v1) / var_p(v1) with r_amp_v1. Means unchanged.
FieldState apply_squeezing(const FieldState& state, const SqueezingSpec& spec);

/// Formal inverse: the same factors applied with the quadrature roles swapped,
/// so apply_inverse_squeezing(apply_squeezing(s, r), r) == s.
FieldState apply_inverse_squeezing(const FieldState& state, const SqueezingSpec& spec);

/// JSON state dump, one record per tracked mode:
/// {"modes":[{"mode","mean_q","mean_p","var_q","var_p"},...]}
std::string state_json(const FieldState& state);

}  // namespace qtiming
