#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtiming/scenario.hpp"

namespace qtiming {

enum class OutputFormat { csv, json };

std::optional<OutputFormat> format_from_string(const std::string& name);

struct CommandResult {
    std::string text;  // stdout payload; empty when everything went to files
    std::vector<std::pair<std::string, std::string>> files;  // path -> content
};

/// SQL record (tof / phase / combined / squeezed limits plus basis numbers);
/// with run.sweep_param set, a 1-D sweep of the minimum resolvable delay.
CommandResult cmd_sql(const Scenario& s, std::optional<OutputFormat> format);

/// Sampled v0, v1, w1. With an out base, one CSV per mode at
/// <base>.v0.csv / <base>.v1.csv / <base>.w1.csv.
CommandResult cmd_modes(const Scenario& s, std::optional<OutputFormat> format,
                        const std::optional<std::string>& out_base);

/// Fisher information over the LO mixing angle.
CommandResult cmd_fisher(const Scenario& s, std::optional<OutputFormat> format);

/// Monte Carlo delay estimation report.
CommandResult cmd_simulate(const Scenario& s, std::optional<OutputFormat> format);

/// Technical-noise budget against the quantum floor.
CommandResult cmd_budget(const Scenario& s, std::optional<OutputFormat> format,
                         const std::optional<std::string>& noise_csv_override);

}  // namespace qtiming
