#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "qtiming/estimation.hpp"

namespace qtiming {

/// Flat key=value scenario with bracketed sections, '#' comments, UTF-8.
/// Every field has a default (the 10 mW / 810 nm / 10 fs gaussian scenario);
/// unknown or duplicate keys are hard errors.
struct Scenario {
    // [pulse]
    std::optional<double> omega0_rad_s;        // exclusive with wavelength_m
    double wavelength_m = 810e-9;
    Envelope envelope = Envelope::gaussian;
    double fwhm_s = 10e-15;
    double power_w = 0.01;
    double detection_time_s = 1.0;
    std::optional<double> photon_number;       // overrides the power route
    double theta_rad = 0.0;
    // [squeezing]
    double r_phase_v0 = 0.0;
    double r_amp_v1 = 0.0;
    // [lo]
    LoMode lo_mode = LoMode::timing_w1;
    double lo_mix_angle_rad = 0.0;
    double theta_lo_rad = 0.0;
    double n_lo = 1e16;
    bool strong_lo = true;
    // [grid]
    double guard_factor = 40.0;
    std::size_t n_points = 65536;
    // [run]
    std::size_t n_trials = 100000;
    std::uint64_t seed = 12345;
    double delta_u_s = 1e-18;
    std::size_t n_angles = 256;
    std::optional<std::string> sweep_param;    // photon_number | power_w | r
    double sweep_min = 0.0;
    double sweep_max = 0.0;
    std::size_t sweep_points = 33;
    bool sweep_log = true;
    std::optional<std::string> dump_outcomes_path;
    // [budget]
    std::optional<std::string> noise_csv;
    bool rss_total = false;
};

Scenario parse_scenario(std::istream& in, const std::string& name);
Scenario load_scenario_file(const std::string& path);

/// Everything the analysis commands need, derived from a scenario.
struct ScenarioContext {
    PulseSpec pulse;
    TimeGrid grid;
    std::shared_ptr<const ModeBasis> basis;
    FieldState state;  // coherent state with the scenario's squeezing applied
    HomodyneConfig lo;
};

ScenarioContext build_context(const Scenario& s);

/// Resolved carrier frequency and photon number without building the grid.
double scenario_omega0(const Scenario& s);
double scenario_photon_number(const Scenario& s);

/// Human/machine-readable description of every scenario key, default and
/// output column, as one JSON document (the --schema payload).
std::string schema_json();

}  // namespace qtiming
