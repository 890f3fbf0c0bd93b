#pragma once

#include <complex>
#include <memory>
#include <string>

#include "qtiming/quantum_state.hpp"

namespace qtiming {

enum class LoMode { timing_w1, phase_iv0, tof_v1, mix };

LoMode lo_mode_from_string(const std::string& name, double* mix_angle_rad);
std::string to_string(LoMode kind, double mix_angle_rad);

/// Local-oscillator configuration for balanced homodyne detection. The LO mode
/// must be unit norm and lie in span{v0, v1}; its components l0 = <v0|lo>,
/// l1 = <v1|lo> are fixed at construction. `scale` is the opaque detector-unit
/// constant |E|^2; it cancels in every scale-free output.
struct HomodyneConfig {
    std::shared_ptr<const ModeBasis> basis;
    SampledMode lo_mode;
    std::complex<double> l0{0.0, 0.0};
    std::complex<double> l1{0.0, 0.0};
    LoMode kind = LoMode::timing_w1;
    double mix_angle = 0.0;  // chi in lo = cos(chi) i v0 + sin(chi) v1
    double theta_lo = 0.0;
    double n_lo = 1.0;
    bool strong_lo = true;
    double scale = 1.0;      // |E|^2, detector units
};

/// Build the LO in one of the named modes: w1, i v0, v1, or the mixing family
/// cos(chi) i v0 + sin(chi) v1 (chi in [0, pi/2]).
HomodyneConfig make_lo(std::shared_ptr<const ModeBasis> basis, LoMode kind,
                       double mix_angle_rad, double theta_lo, double n_lo,
                       bool strong_lo = true, double scale = 1.0);

/// Arbitrary sampled LO. Rejects modes that are not unit norm or that carry
/// more than 1e-6 of their norm outside span{v0, v1} (such light couples to
/// untracked vacuum modes).
HomodyneConfig make_custom_lo(std::shared_ptr<const ModeBasis> basis, SampledMode lo,
                              double theta_lo, double n_lo, bool strong_lo = true,
                              double scale = 1.0);

struct HomodyneStats {
    double mean = 0.0;      // detector units
    double variance = 0.0;  // detector units^2
    double snr = 0.0;       // |mean| / sqrt(variance)
};

/// Mean homodyne signal, linear in delta_u:
///   <D> = 2 |E|^2 sqrt(N N_LO) Re[ e^{-i(theta-theta_LO)} (l0 + delta_u d) ],
///   d = -i omega0 l0 + dw l1.
/// For the LO in w1 this is exactly
///   2 |E|^2 sqrt(N N_LO) [ (du/u0) cos(theta-theta_LO)
///                          + alpha/sqrt(alpha^2+1) sin(theta-theta_LO) ].
double mean_signal(const FieldState& signal, const HomodyneConfig& cfg, double delta_u);

/// Same observable evaluated from the sampled modes: the grid-level overlap
/// <lo|v0(.-du)>, exact in delta_u. Agrees with mean_signal to first order.
double mean_signal_numeric(const FieldState& signal, const HomodyneConfig& cfg,
                           double delta_u);

/// Strong-LO homodyne variance at du = 0:
///   |E|^4 N_LO sum_n |l_n|^2 (cos^2(arg l_n) var_q,n + sin^2(arg l_n) var_p,n),
/// which for the LO in w1 is |E|^4 N_LO (alpha^2 var_P0 + var_Q1)/(1+alpha^2).
double variance_signal(const FieldState& signal, const HomodyneConfig& cfg);

/// d mean_signal / d delta_u at the configured phases, detector units per second.
double signal_slope(const FieldState& signal, const HomodyneConfig& cfg);

/// Background-subtracted signal-to-noise ratio |mean(du) - mean(0)| / sigma.
double snr_at(const FieldState& signal, const HomodyneConfig& cfg, double delta_u);

HomodyneStats stats_at(const FieldState& signal, const HomodyneConfig& cfg,
                       double delta_u);

/// Smallest delay at unit SNR, evaluated at the optimal phase theta = theta_LO.
/// For the LO in w1: (u0 / 2 sqrt(N)) sqrt((alpha^2 var_P0 + var_Q1)/(1+alpha^2));
/// independent of N_LO and of the detector scale.
double min_resolvable_delay(const FieldState& signal, const HomodyneConfig& cfg);

/// Time-of-flight and phase-measurement standard quantum limits.
double sql_tof(double photon_number, double delta_omega);
double sql_phase(double photon_number, double omega0);

/// Algebraic core of the combined limit:
///   sqrt((omega0^2 var_p0 + dw^2 var_q1)/(omega0^2 + dw^2)) / (2 sqrt(N) sqrt(omega0^2 + dw^2))
double timing_limit(double photon_number, double omega0, double delta_omega,
                    double var_p0 = 1.0, double var_q1 = 1.0);

/// 1-D sweep dump, CSV `param,value,delta_u_min_seconds`.
std::string delay_sweep_csv(const std::string& param,
                            const std::vector<double>& values,
                            const std::vector<double>& delays);

/// Single-point query, JSON {delta_u_s, mean, variance, snr, min_resolvable_delay_s}.
std::string stats_json(const FieldState& signal, const HomodyneConfig& cfg,
                       double delta_u);

}  // namespace qtiming
