#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "qtiming/errors.hpp"
#include "qtiming/scenario.hpp"
#include "test_helpers.hpp"

using namespace qtiming;
using qtest::rel_diff;

namespace {

Scenario parse(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in, "inline");
}

std::string parse_error(const std::string& text) {
    return qtest::message_of([&] { (void)parse(text); });
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("an empty scenario is the 10 mW / 810 nm / 10 fs reference") {
    const Scenario s = parse("");
    CHECK(rel_diff(scenario_omega0(s), qtest::reference_omega0()) < 1e-15);
    CHECK(rel_diff(scenario_photon_number(s), qtest::reference_photons()) < 1e-15);
    CHECK(s.envelope == Envelope::gaussian);
    CHECK(s.fwhm_s == 10e-15);
    CHECK(s.lo_mode == LoMode::timing_w1);
    CHECK(s.n_points == 65536);
    CHECK(s.guard_factor == 40.0);
    CHECK(s.seed == 12345);
    CHECK(s.strong_lo);
}

TEST_CASE("all sections parse, comments and blanks ignored") {
    const Scenario s = parse(
        "# reference run\n"
        "[pulse]\n"
        "envelope = sech\n"
        "fwhm_s = 20e-15   # intensity FWHM\n"
        "photon_number = 1e12\n"
        "theta_rad = 0.25\n"
        "\n"
        "[squeezing]\n"
        "r_phase_v0 = 1.0\n"
        "r_amp_v1 = 0.5\n"
        "[lo]\n"
        "mode = mix:0.05\n"
        "theta_lo_rad = 0.25\n"
        "n_lo = 1e10\n"
        "[grid]\n"
        "guard_factor = 25\n"
        "n_points = 4096\n"
        "[run]\n"
        "n_trials = 1000\n"
        "seed = 99\n"
        "delta_u_s = 2e-18\n"
        "n_angles = 64\n"
        "[budget]\n"
        "rss_total = true\n");
    CHECK(s.envelope == Envelope::sech);
    CHECK(s.fwhm_s == 20e-15);
    CHECK(s.photon_number.value() == 1e12);
    CHECK(s.theta_rad == 0.25);
    CHECK(s.r_phase_v0 == 1.0);
    CHECK(s.r_amp_v1 == 0.5);
    CHECK(s.lo_mode == LoMode::mix);
    CHECK(s.lo_mix_angle_rad == 0.05);
    CHECK(s.n_lo == 1e10);
    CHECK(s.guard_factor == 25.0);
    CHECK(s.n_points == 4096);
    CHECK(s.n_trials == 1000);
    CHECK(s.seed == 99);
    CHECK(s.delta_u_s == 2e-18);
    CHECK(s.n_angles == 64);
    CHECK(s.rss_total);
}

TEST_CASE("unknown keys, sections and malformed lines carry line diagnostics") {
    CHECK(parse_error("[pulse]\nwavelenght_m = 8e-7\n").find("inline:2") !=
          std::string::npos);
    CHECK(parse_error("[pulse]\nwavelenght_m = 8e-7\n").find("unknown key") !=
          std::string::npos);
    CHECK(parse_error("[pulse]\nwavelenght_m = 8e-7\n").find("pulse.wavelenght_m") !=
          std::string::npos);
    CHECK(parse_error("[laser]\n").find("unknown section") != std::string::npos);
    CHECK(parse_error("[pulse]\nfwhm_s 10e-15\n").find("key = value") !=
          std::string::npos);
    CHECK(parse_error("fwhm_s = 10e-15\n").find("outside any") != std::string::npos);
    CHECK(parse_error("[pulse]\nfwhm_s = 1e-14\nfwhm_s = 2e-14\n").find("duplicate") !=
          std::string::npos);
    CHECK(parse_error("[pulse]\nfwhm_s = ten\n").find("number") != std::string::npos);
    CHECK(parse_error("[lo]\nstrong_lo = yes\n").find("true or false") !=
          std::string::npos);
    CHECK(parse_error("[pulse]\nenvelope = square\n").find("envelope") !=
          std::string::npos);
    CHECK(parse_error("[lo]\nmode = mix:9\n").find("mix") != std::string::npos);
    CHECK(parse_error("[pulse\n").find("unterminated") != std::string::npos);
}

TEST_CASE("photon budget and carrier routes are mutually exclusive") {
    CHECK(parse_error("[pulse]\nphoton_number = 1e12\npower_w = 0.01\n")
              .find("photon_number") != std::string::npos);
    CHECK(parse_error("[pulse]\nomega0_rad_s = 2e15\nwavelength_m = 810e-9\n")
              .find("omega0") != std::string::npos);
    // either route alone is fine
    CHECK(scenario_photon_number(parse("[pulse]\nphoton_number = 1e12\n")) == 1e12);
    const Scenario w = parse("[pulse]\nomega0_rad_s = 2e15\n");
    CHECK(scenario_omega0(w) == 2e15);
}

TEST_CASE("build_context wires the modules together") {
    const Scenario s = parse(
        "[pulse]\ntheta_rad = 0.3\n[squeezing]\nr_phase_v0 = 0.7\n"
        "[lo]\nmode = v1\ntheta_lo_rad = 0.3\n[grid]\nn_points = 4096\n"
        "guard_factor = 20\n");
    const ScenarioContext ctx = build_context(s);
    CHECK(ctx.pulse.theta == 0.3);
    CHECK(ctx.state.theta == 0.3);
    CHECK(rel_diff(ctx.state.v0.var_p, std::exp(-1.4)) < 1e-12);
    CHECK(ctx.lo.kind == LoMode::tof_v1);
    CHECK(ctx.lo.theta_lo == 0.3);
    CHECK(ctx.grid.n_points == 4096);
    CHECK(ctx.basis->alpha > 0.0);
}

TEST_CASE("context propagates grid validation") {
    CHECK_THROWS_AS(build_context(parse("[grid]\nn_points = 100\n")),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_context(parse("[pulse]\nphoton_number = -1\n")),
                    config_error);
}

TEST_CASE("schema document lists keys, outputs and env knobs") {
    const nlohmann::json j = nlohmann::json::parse(schema_json());
    CHECK(j["scenario_keys"]["pulse"].contains("wavelength_m"));
    CHECK(j["scenario_keys"]["run"].contains("seed"));
    CHECK(j["outputs"].contains("sql"));
    CHECK(j["outputs"].contains("budget"));
    CHECK(j["env"].contains("QTIMING_THREADS"));
    const std::string budget_doc = j["outputs"]["budget"].get<std::string>();
    CHECK(budget_doc.find("kind,timing_asd_s_per_rtHz") != std::string::npos);
}

}  // TEST_SUITE
