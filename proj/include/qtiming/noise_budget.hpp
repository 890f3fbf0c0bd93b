#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtiming {

enum class NoiseKind { ceo_phase, rep_rate_jitter, quantum_floor };

NoiseKind noise_kind_from_string(const std::string& name);
const char* to_string(NoiseKind kind);

/// One technical-noise figure in its native units: rad/rtHz for carrier-envelope
/// phase noise, s/rtHz for repetition-rate jitter and the quantum floor.
struct NoiseSource {
    NoiseKind kind = NoiseKind::quantum_floor;
    double amplitude = 0.0;     // native units
    double at_frequency = 0.0;  // analysis Fourier frequency, Hz
};

struct BudgetRow {
    NoiseSource source;
    double timing_asd = 0.0;  // s/rtHz
    double ratio_to_quantum_floor = 0.0;
    bool dominant = false;
};

struct Budget {
    std::vector<BudgetRow> rows;
    double rss_total = 0.0;  // s/rtHz, only meaningful when has_rss
    bool has_rss = false;
};

/// Phase noise to timing noise: timing_asd = phase_asd / omega0.
double phase_to_timing(double phase_asd, double omega0);
double timing_to_phase(double timing_asd, double omega0);

/// Convert every source to s/rtHz, append a quantum-floor row when none is
/// present, mark the largest row dominant (ties: first in listing order) and
/// report each row's ratio to `quantum_floor_asd`. The optional RSS total is
/// display-only.
Budget build_budget(const std::vector<NoiseSource>& sources, double quantum_floor_asd,
                    double omega0, bool rss_total = false);

/// CSV `kind,amplitude,units,at_frequency_hz`; units must be rad/rtHz for
/// ceo_phase and s/rtHz otherwise. Multiple rows per kind (a sampled PSD
/// curve) are accepted.
std::vector<NoiseSource> read_noise_csv(std::istream& in, const std::string& name);
std::vector<NoiseSource> read_noise_csv_file(const std::string& path);

/// CSV `kind,timing_asd_s_per_rtHz,ratio_to_quantum_floor,dominant`.
std::string budget_csv(const Budget& budget);
std::string budget_json(const Budget& budget);

}  // namespace qtiming
