#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qtiming/homodyne.hpp"

namespace qtiming {

struct LoDescription {
    double mix_angle_rad = 0.0;  // chi in lo = cos(chi) i v0 + sin(chi) v1
    double theta_lo_rad = 0.0;
};

struct FisherResult {
    double fisher_info = 0.0;  // 1/s^2
    double crb = 0.0;          // s, = 1/sqrt(fisher_info)
    LoDescription lo;
};

/// Fisher information of the Gaussian homodyne outcome about delta_u,
/// F = (d mean / d delta_u)^2 / variance, with the slope taken analytically.
/// The variance is delta_u-independent in the strong-LO model, so delta_u
/// only tags the linearization point.
FisherResult fisher_info(const FieldState& signal, const HomodyneConfig& cfg,
                         double delta_u = 0.0);

/// F(chi) over LO modes cos(chi) i v0 + sin(chi) v1, chi in [0, pi/2]
/// inclusive, at theta = theta_LO. n_angles >= 32.
std::vector<FisherResult> lo_optimality_scan(const FieldState& signal,
                                             std::size_t n_angles);

/// Monte Carlo estimation report. Reproducible bit-exactly from (config, seed)
/// for a fixed binary; `generator` documents the sampling transform.
struct MonteCarloReport {
    std::size_t n_trials = 0;
    double true_delta_u = 0.0;
    double estimator_mean = 0.0;
    double estimator_std = 0.0;   // per-shot standard deviation
    double analytic_bound = 0.0;  // min_resolvable_delay at theta = theta_LO
    std::uint64_t seed = 0;
    std::string generator;
};

/// i.i.d. normal homodyne outcomes with mean mean_signal(delta_u) and variance
/// variance_signal. Trials are partitioned into fixed 65536-trial blocks, each
/// seeded from a splitmix64 stream of `seed`, so the array is bit-identical
/// regardless of worker count. QTIMING_THREADS caps workers (0 or unset = auto).
std::vector<double> simulate_shots(const FieldState& signal, const HomodyneConfig& cfg,
                                   double delta_u, std::size_t n_trials,
                                   std::uint64_t seed);

/// Per-shot linear inversion of the mean signal,
///   du_hat = (D - mean(0)) / (d mean / d delta_u),
/// aggregated into mean/std plus the analytic bound. Rejects configurations
/// with |cos(theta - theta_LO)| < 1e-6 (singular estimator). n >= 2.
MonteCarloReport estimate_delay(std::span<const double> outcomes,
                                const FieldState& signal, const HomodyneConfig& cfg,
                                double true_delta_u, std::uint64_t seed);

/// simulate_shots + estimate_delay in one call.
MonteCarloReport run_monte_carlo(const FieldState& signal, const HomodyneConfig& cfg,
                                 double delta_u, std::size_t n_trials,
                                 std::uint64_t seed);

std::string report_json(const MonteCarloReport& report);

/// Raw outcome dump, little-endian IEEE-754 doubles.
void write_outcomes_le64(std::span<const double> outcomes, const std::string& path);

/// Worker cap from QTIMING_THREADS (0 or unset = hardware concurrency).
unsigned worker_count();

}  // namespace qtiming
