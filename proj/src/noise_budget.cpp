#include "qtiming/noise_budget.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "qtiming/errors.hpp"

namespace qtiming {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    return fields;
}

double parse_double(const std::string& text, const std::string& where) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size()) throw config_error("not a number: '" + text + "'", where);
    return v;
}

}  // namespace

NoiseKind noise_kind_from_string(const std::string& name) {
    if (name == "ceo_phase") return NoiseKind::ceo_phase;
    if (name == "rep_rate_jitter") return NoiseKind::rep_rate_jitter;
    if (name == "quantum_floor") return NoiseKind::quantum_floor;
    throw std::invalid_argument("unknown noise kind '" + name +
                                "' (expected ceo_phase, rep_rate_jitter or quantum_floor)");
}

const char* to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::ceo_phase: return "ceo_phase";
        case NoiseKind::rep_rate_jitter: return "rep_rate_jitter";
        case NoiseKind::quantum_floor: return "quantum_floor";
    }
    return "?";
}

double phase_to_timing(double phase_asd, double omega0) {
    if (!(phase_asd > 0.0) || !(omega0 > 0.0)) {
        if (phase_asd == 0.0 && omega0 > 0.0) return 0.0;
        throw std::invalid_argument("phase_to_timing: inputs must be > 0");
    }
    return phase_asd / omega0;
}

double timing_to_phase(double timing_asd, double omega0) {
    if (!(omega0 > 0.0)) throw std::invalid_argument("timing_to_phase: omega0 must be > 0");
    return timing_asd * omega0;
}

Budget build_budget(const std::vector<NoiseSource>& sources, double quantum_floor_asd,
                    double omega0, bool rss_total) {
    if (sources.empty()) {
        throw std::invalid_argument("build_budget: at least one noise source required");
    }
    if (!(quantum_floor_asd > 0.0)) {
        throw std::invalid_argument("build_budget: quantum floor must be > 0");
    }

    Budget budget;
    bool have_floor = false;
    for (const NoiseSource& src : sources) {
        if (src.amplitude < 0.0) {
            throw std::invalid_argument("build_budget: amplitudes must be >= 0");
        }
        BudgetRow row;
        row.source = src;
        row.timing_asd = src.kind == NoiseKind::ceo_phase
                             ? phase_to_timing(src.amplitude, omega0)
                             : src.amplitude;
        row.ratio_to_quantum_floor = row.timing_asd / quantum_floor_asd;
        budget.rows.push_back(row);
        if (src.kind == NoiseKind::quantum_floor) have_floor = true;
    }
    if (!have_floor) {
        BudgetRow row;
        row.source = {NoiseKind::quantum_floor, quantum_floor_asd, 0.0};
        row.timing_asd = quantum_floor_asd;
        row.ratio_to_quantum_floor = 1.0;
        budget.rows.push_back(row);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < budget.rows.size(); ++i) {
        if (budget.rows[i].timing_asd > budget.rows[best].timing_asd) best = i;
    }
    budget.rows[best].dominant = true;

    if (rss_total) {
        double acc = 0.0;
        for (const BudgetRow& row : budget.rows) acc += row.timing_asd * row.timing_asd;
        budget.rss_total = std::sqrt(acc);
        budget.has_rss = true;
    }
    return budget;
}

std::vector<NoiseSource> read_noise_csv(std::istream& in, const std::string& name) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw config_error("empty noise CSV", name);
    ++line_no;
    if (trim(line) != "kind,amplitude,units,at_frequency_hz") {
        throw config_error("expected header 'kind,amplitude,units,at_frequency_hz'",
                           name + ":1");
    }
    std::vector<NoiseSource> sources;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::string where = name + ":" + std::to_string(line_no);
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) throw config_error("expected 4 columns", where);
        NoiseSource src;
        try {
            src.kind = noise_kind_from_string(fields[0]);
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what(), where);
        }
        src.amplitude = parse_double(fields[1], where);
        if (src.amplitude < 0.0) throw config_error("amplitude must be >= 0", where);
        const std::string expected_units =
            src.kind == NoiseKind::ceo_phase ? "rad/rtHz" : "s/rtHz";
        if (fields[2] != expected_units) {
            throw config_error("units for " + std::string(to_string(src.kind)) +
                                   " must be '" + expected_units + "', got '" +
                                   fields[2] + "'",
                               where);
        }
        src.at_frequency = parse_double(fields[3], where);
        sources.push_back(src);
    }
    return sources;
}

std::vector<NoiseSource> read_noise_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open noise CSV '" + path + "'");
    return read_noise_csv(in, path);
}

std::string budget_csv(const Budget& budget) {
    std::ostringstream out;
    out << "kind,timing_asd_s_per_rtHz,ratio_to_quantum_floor,dominant\n";
    char buf[96];
    for (const BudgetRow& row : budget.rows) {
        std::snprintf(buf, sizeof(buf), ",%.16e,%.16e,", row.timing_asd,
                      row.ratio_to_quantum_floor);
        out << to_string(row.source.kind) << buf << (row.dominant ? "true" : "false")
            << "\n";
    }
    if (budget.has_rss) {
        std::snprintf(buf, sizeof(buf), "rss_total,%.16e,,false\n", budget.rss_total);
        out << buf;
    }
    return out.str();
}

std::string budget_json(const Budget& budget) {
    nlohmann::json rows = nlohmann::json::array();
    for (const BudgetRow& row : budget.rows) {
        rows.push_back({{"kind", to_string(row.source.kind)},
                        {"amplitude", row.source.amplitude},
                        {"at_frequency_hz", row.source.at_frequency},
                        {"timing_asd_s_per_rtHz", row.timing_asd},
                        {"ratio_to_quantum_floor", row.ratio_to_quantum_floor},
                        {"dominant", row.dominant}});
    }
    nlohmann::json j{{"rows", rows}};
    if (budget.has_rss) j["rss_total_s_per_rtHz"] = budget.rss_total;
    return j.dump(2);
}

}  // namespace qtiming
