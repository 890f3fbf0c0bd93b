#include "qtiming/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

#include "qtiming/constants.hpp"
#include "qtiming/errors.hpp"

namespace qtiming {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& text, const std::string& where) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw config_error("expected a finite number, got '" + text + "'", where);
    }
    return v;
}

std::size_t to_count(const std::string& text, const std::string& where) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size()) {
        throw config_error("expected a non-negative integer, got '" + text + "'", where);
    }
    return static_cast<std::size_t>(v);
}

std::uint64_t to_u64(const std::string& text, const std::string& where) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size()) {
        throw config_error("expected an unsigned 64-bit integer, got '" + text + "'",
                           where);
    }
    return v;
}

bool to_bool(const std::string& text, const std::string& where) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw config_error("expected true or false, got '" + text + "'", where);
}

using Setter = std::function<void(Scenario&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& key_table() {
    static const std::map<std::string, Setter> table = {
        {"pulse.omega0_rad_s",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.omega0_rad_s = to_double(v, w);
         }},
        {"pulse.wavelength_m",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.wavelength_m = to_double(v, w);
         }},
        {"pulse.envelope",
         [](Scenario& s, const std::string& v, const std::string& w) {
             try {
                 s.envelope = envelope_from_string(v);
             } catch (const std::invalid_argument& e) {
                 throw config_error(e.what(), w);
             }
         }},
        {"pulse.fwhm_s",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.fwhm_s = to_double(v, w);
         }},
        {"pulse.power_w",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.power_w = to_double(v, w);
         }},
        {"pulse.detection_time_s",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.detection_time_s = to_double(v, w);
         }},
        {"pulse.photon_number",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.photon_number = to_double(v, w);
         }},
        {"pulse.theta_rad",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.theta_rad = to_double(v, w);
         }},
        {"squeezing.r_phase_v0",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.r_phase_v0 = to_double(v, w);
         }},
        {"squeezing.r_amp_v1",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.r_amp_v1 = to_double(v, w);
         }},
        {"lo.mode",
         [](Scenario& s, const std::string& v, const std::string& w) {
             try {
                 s.lo_mode = lo_mode_from_string(v, &s.lo_mix_angle_rad);
             } catch (const std::invalid_argument& e) {
                 throw config_error(e.what(), w);
             }
         }},
        {"lo.theta_lo_rad",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.theta_lo_rad = to_double(v, w);
         }},
        {"lo.n_lo",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.n_lo = to_double(v, w);
         }},
        {"lo.strong_lo",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.strong_lo = to_bool(v, w);
         }},
        {"grid.guard_factor",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.guard_factor = to_double(v, w);
         }},
        {"grid.n_points",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.n_points = to_count(v, w);
         }},
        {"run.n_trials",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.n_trials = to_count(v, w);
         }},
        {"run.seed",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.seed = to_u64(v, w);
         }},
        {"run.delta_u_s",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.delta_u_s = to_double(v, w);
         }},
        {"run.n_angles",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.n_angles = to_count(v, w);
         }},
        {"run.sweep_param",
         [](Scenario& s, const std::string& v, const std::string& w) {
             if (v != "photon_number" && v != "power_w" && v != "r") {
                 throw config_error(
                     "sweep_param must be photon_number, power_w or r, got '" + v + "'",
                     w);
             }
             s.sweep_param = v;
         }},
        {"run.sweep_min",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.sweep_min = to_double(v, w);
         }},
        {"run.sweep_max",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.sweep_max = to_double(v, w);
         }},
        {"run.sweep_points",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.sweep_points = to_count(v, w);
         }},
        {"run.sweep_log",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.sweep_log = to_bool(v, w);
         }},
        {"run.dump_outcomes_path",
         [](Scenario& s, const std::string& v, const std::string&) {
             s.dump_outcomes_path = v;
         }},
        {"budget.noise_csv",
         [](Scenario& s, const std::string& v, const std::string&) {
             s.noise_csv = v;
         }},
        {"budget.rss_total",
         [](Scenario& s, const std::string& v, const std::string& w) {
             s.rss_total = to_bool(v, w);
         }},
    };
    return table;
}

const std::set<std::string> kSections = {"pulse", "squeezing", "lo",
                                         "grid",  "run",       "budget"};

}  // namespace

Scenario parse_scenario(std::istream& in, const std::string& name) {
    Scenario s;
    std::set<std::string> seen;
    std::string section;
    std::string line;
    int line_no = 0;
    bool photons_explicit = false, power_explicit = false, omega_explicit = false,
         lambda_explicit = false;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = name + ":" + std::to_string(line_no);
        std::string text = line;
        const auto hash = text.find('#');
        if (hash != std::string::npos) text.erase(hash);
        text = trim(text);
        if (text.empty()) continue;

        if (text.front() == '[') {
            if (text.back() != ']') throw config_error("unterminated section header", where);
            section = trim(text.substr(1, text.size() - 2));
            if (!kSections.count(section)) {
                throw config_error("unknown section '[" + section + "]'", where);
            }
            continue;
        }

        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw config_error("expected 'key = value'", where);
        }
        if (section.empty()) {
            throw config_error("key outside any [section]", where);
        }
        const std::string key = section + "." + trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        const auto it = key_table().find(key);
        if (it == key_table().end()) {
            throw config_error("unknown key '" + key + "'", where);
        }
        if (!seen.insert(key).second) {
            throw config_error("duplicate key '" + key + "'", where);
        }
        it->second(s, value, where);

        if (key == "pulse.photon_number") photons_explicit = true;
        if (key == "pulse.power_w" || key == "pulse.detection_time_s")
            power_explicit = true;
        if (key == "pulse.omega0_rad_s") omega_explicit = true;
        if (key == "pulse.wavelength_m") lambda_explicit = true;
    }

    if (photons_explicit && power_explicit) {
        throw config_error(
            "pulse.photon_number conflicts with pulse.power_w/detection_time_s; "
            "give exactly one photon budget",
            name);
    }
    if (omega_explicit && lambda_explicit) {
        throw config_error(
            "pulse.omega0_rad_s conflicts with pulse.wavelength_m; give exactly one",
            name);
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open scenario '" + path + "'");
    return parse_scenario(in, path);
}

double scenario_omega0(const Scenario& s) {
    if (s.omega0_rad_s) {
        if (!(*s.omega0_rad_s > 0.0)) {
            throw config_error("pulse.omega0_rad_s must be > 0");
        }
        return *s.omega0_rad_s;
    }
    if (!(s.wavelength_m > 0.0)) throw config_error("pulse.wavelength_m must be > 0");
    return omega0_from_wavelength(s.wavelength_m);
}

double scenario_photon_number(const Scenario& s) {
    if (s.photon_number) {
        if (!(*s.photon_number > 0.0)) {
            throw config_error("pulse.photon_number must be > 0");
        }
        return *s.photon_number;
    }
    return photons_from_power(s.power_w, s.detection_time_s, scenario_omega0(s));
}

ScenarioContext build_context(const Scenario& s) {
    ScenarioContext ctx;
    ctx.pulse.omega0 = scenario_omega0(s);
    ctx.pulse.envelope = s.envelope;
    ctx.pulse.duration_fwhm = s.fwhm_s;
    ctx.pulse.photon_number = scenario_photon_number(s);
    ctx.pulse.theta = s.theta_rad;
    ctx.grid = make_grid(ctx.pulse, s.guard_factor, s.n_points);
    ctx.basis = std::make_shared<const ModeBasis>(build_basis(ctx.pulse, ctx.grid));
    ctx.state = apply_squeezing(
        coherent_state(ctx.basis, ctx.pulse.photon_number, ctx.pulse.theta),
        SqueezingSpec{s.r_phase_v0, s.r_amp_v1});
    ctx.lo = make_lo(ctx.basis, s.lo_mode, s.lo_mix_angle_rad, s.theta_lo_rad, s.n_lo,
                     s.strong_lo);
    return ctx;
}

std::string schema_json() {
    nlohmann::json scenario = {
        {"pulse",
         {{"wavelength_m", "carrier vacuum wavelength, m (default 810e-9; exclusive "
                           "with omega0_rad_s)"},
          {"omega0_rad_s", "carrier angular frequency, rad/s (optional)"},
          {"envelope", "gaussian | sech (default gaussian)"},
          {"fwhm_s", "intensity FWHM, s (default 10e-15)"},
          {"power_w", "average power, W (default 0.01)"},
          {"detection_time_s", "detection window, s (default 1.0)"},
          {"photon_number", "photons per window (optional; overrides the power "
                            "route, exclusive with power_w/detection_time_s)"},
          {"theta_rad", "global phase, rad (default 0)"}}},
        {"squeezing",
         {{"r_phase_v0", "squeezing parameter on P of v0, r >= 0 (default 0)"},
          {"r_amp_v1", "squeezing parameter on Q of v1, r >= 0 (default 0)"}}},
        {"lo",
         {{"mode", "w1 | iv0 | v1 | mix:<angle_rad> (default w1)"},
          {"theta_lo_rad", "LO phase, rad (default 0)"},
          {"n_lo", "LO photon number (default 1e16; cancels in scale-free outputs)"},
          {"strong_lo", "true|false (default true; only true is modeled)"}}},
        {"grid",
         {{"guard_factor", "window / fwhm, >= 20 (default 40)"},
          {"n_points", "grid points, power of two >= 16 (default 65536)"}}},
        {"run",
         {{"n_trials", "Monte Carlo trials (default 100000)"},
          {"seed", "64-bit RNG seed (default 12345; --seed overrides)"},
          {"delta_u_s", "true delay for simulate, s (default 1e-18)"},
          {"n_angles", "fisher scan angles, >= 32 (default 256)"},
          {"sweep_param", "photon_number | power_w | r (optional; sql sweeps when set)"},
          {"sweep_min", "sweep start (required with sweep_param)"},
          {"sweep_max", "sweep end (required with sweep_param)"},
          {"sweep_points", "sweep points (default 33)"},
          {"sweep_log", "true|false log spacing (default true)"},
          {"dump_outcomes_path", "optional path; simulate writes raw outcomes as "
                                 "little-endian float64"}}},
        {"budget",
         {{"noise_csv", "path to noise CSV (or budget --noise)"},
          {"rss_total", "true|false append root-sum-square total (default false)"}}}};

    nlohmann::json outputs = {
        {"sql", "JSON record: omega0_rad_s, delta_omega_rad_s, alpha, u0_s, "
                "photon_number, sql_tof_s, sql_phase_s, sql_combined_s, "
                "sql_squeezed_s, note. With run.sweep_param set and --format csv: "
                "CSV 'param,value,delta_u_min_seconds'"},
        {"modes", "per-mode CSV 't_seconds,re_amplitude,im_amplitude' (one file per "
                  "mode with --out <base>: <base>.v0.csv/.v1.csv/.w1.csv; on stdout "
                  "the blocks are separated by '# mode <label>' lines)"},
        {"fisher", "CSV 'chi_rad,fisher_info_per_s2,crb_seconds' over the LO mixing "
                   "angle; JSON adds the exact w1 point"},
        {"simulate", "JSON Monte Carlo report: n_trials, true_delta_u_s, "
                     "estimator_mean_s, estimator_std_s, analytic_bound_s, seed, "
                     "generator"},
        {"budget", "CSV 'kind,timing_asd_s_per_rtHz,ratio_to_quantum_floor,dominant'; "
                   "input CSV 'kind,amplitude,units,at_frequency_hz' with units "
                   "rad/rtHz (ceo_phase) or s/rtHz (others); the quantum floor row is "
                   "added from the scenario when absent (detection-window limit read "
                   "as a 1 Hz-bandwidth ASD)"}};

    nlohmann::json j{
        {"scenario_format",
         "INI-style UTF-8 text: [section] headers, key = value lines, '#' comments. "
         "Unknown or duplicate keys are hard errors."},
        {"numeric_format", "CSV numbers use scientific notation with 17 significant "
                           "digits; JSON numbers round-trip exactly"},
        {"env", {{"QTIMING_THREADS", "cap Monte Carlo workers (0 or unset = auto)"}}},
        {"scenario_keys", scenario},
        {"outputs", outputs}};
    return j.dump(2);
}

}  // namespace qtiming
