#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qtiming/cli_commands.hpp"
#include "qtiming/errors.hpp"

namespace {

void emit_error(const std::string& kind, const std::string& message) {
    nlohmann::json j{{"error", {{"kind", kind}, {"message", message}}}};
    std::cerr << j.dump() << "\n";
}

void deliver(const qtiming::CommandResult& result, const std::optional<std::string>& out,
             bool out_is_base) {
    for (const auto& [path, content] : result.files) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("short write to '" + path + "'");
    }
    if (result.text.empty()) return;
    if (out && !out_is_base) {
        std::ofstream f(*out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open '" + *out + "' for writing");
        f << result.text;
        if (!f) throw std::runtime_error("short write to '" + *out + "'");
    } else {
        std::cout << result.text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-limited pulse timing: SQL/squeezed sensitivity, timing "
                 "modes, Fisher information, Monte Carlo estimation, noise budget"};
    app.require_subcommand(0, 1);

    std::string config_path, out_path, format_name, noise_path;
    std::uint64_t seed_override = 0;
    bool schema = false;
    app.add_option("--config", config_path, "scenario file (defaults apply when absent)");
    app.add_option("--out", out_path,
                   "write output here instead of stdout (for modes: base path, one "
                   "CSV per mode)");
    app.add_option("--format", format_name, "csv or json (per-command default otherwise)")
        ->check(CLI::IsMember({"csv", "json"}));
    auto* seed_opt =
        app.add_option("--seed", seed_override, "override the scenario RNG seed");
    app.add_flag("--schema", schema, "print scenario keys and output schemas, then exit");

    auto* sql = app.add_subcommand("sql", "standard-quantum-limit record (or sweep)");
    auto* modes = app.add_subcommand("modes", "dump the sampled modes v0, v1, w1");
    auto* fisher = app.add_subcommand("fisher", "Fisher information LO-mode scan");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo delay estimation");
    auto* budget = app.add_subcommand("budget", "technical-noise budget");
    budget->add_option("--noise", noise_path, "noise CSV (overrides [budget] noise_csv)");
    for (CLI::App* sub : {sql, modes, fisher, simulate, budget}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("usage", e.what());
        return 2;
    }

    try {
        if (schema) {
            std::cout << qtiming::schema_json() << "\n";
            return 0;
        }
        if (app.get_subcommands().empty()) {
            throw qtiming::config_error(
                "no command given (expected sql, modes, fisher, simulate or budget)");
        }

        qtiming::Scenario scenario;
        if (!config_path.empty()) {
            scenario = qtiming::load_scenario_file(config_path);
        }
        if (seed_opt->count() > 0) scenario.seed = seed_override;

        const auto format = qtiming::format_from_string(format_name);
        const std::optional<std::string> out =
            out_path.empty() ? std::nullopt : std::make_optional(out_path);
        const std::optional<std::string> noise =
            noise_path.empty() ? std::nullopt : std::make_optional(noise_path);

        qtiming::CommandResult result;
        bool out_is_base = false;
        if (sql->parsed()) {
            result = qtiming::cmd_sql(scenario, format);
        } else if (modes->parsed()) {
            result = qtiming::cmd_modes(scenario, format, out);
            out_is_base = !result.files.empty();
        } else if (fisher->parsed()) {
            result = qtiming::cmd_fisher(scenario, format);
        } else if (simulate->parsed()) {
            result = qtiming::cmd_simulate(scenario, format);
        } else {
            result = qtiming::cmd_budget(scenario, format, noise);
        }
        deliver(result, out, out_is_base);
        return 0;
    } catch (const qtiming::config_error& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("runtime", e.what());
        return 1;
    }
}
