#include <cmath>
#include <random>

#include "doctest.h"
#include "json.hpp"

#include "qtiming/homodyne.hpp"
#include "test_helpers.hpp"

using namespace qtiming;
using qtest::reference_basis;
using qtest::reference_lo;
using qtest::reference_photons;
using qtest::reference_state;
using qtest::rel_diff;

TEST_SUITE("homodyne") {

TEST_CASE("LO selectors build unit-norm modes with the right mixing angles") {
    const ModeBasis& basis = *reference_basis();
    for (const LoMode kind : {LoMode::timing_w1, LoMode::phase_iv0, LoMode::tof_v1}) {
        const HomodyneConfig cfg = reference_lo(kind);
        CHECK(std::fabs(grid_norm(cfg.lo_mode) - 1.0) < 1e-10);
        CHECK(std::fabs(std::norm(cfg.l0) + std::norm(cfg.l1) - 1.0) < 1e-12);
    }
    CHECK(reference_lo(LoMode::timing_w1).mix_angle ==
          doctest::Approx(std::atan(basis.delta_omega / basis.spec.omega0))
              .epsilon(1e-14));
    CHECK(reference_lo(LoMode::phase_iv0).mix_angle == 0.0);
    CHECK(reference_lo(LoMode::tof_v1).mix_angle == qtiming::pi / 2.0);
}

TEST_CASE("lo mode names parse") {
    double angle = -1.0;
    CHECK(lo_mode_from_string("w1", &angle) == LoMode::timing_w1);
    CHECK(lo_mode_from_string("iv0", &angle) == LoMode::phase_iv0);
    CHECK(lo_mode_from_string("v1", &angle) == LoMode::tof_v1);
    CHECK(lo_mode_from_string("mix:0.25", &angle) == LoMode::mix);
    CHECK(angle == 0.25);
    CHECK_THROWS_AS(lo_mode_from_string("mix:2.0", &angle), std::invalid_argument);
    CHECK_THROWS_AS(lo_mode_from_string("mix:abc", &angle), std::invalid_argument);
    CHECK_THROWS_AS(lo_mode_from_string("tem01", &angle), std::invalid_argument);
}

TEST_CASE("custom LO modes must stay in span{v0, v1}") {
    const ModeBasis& basis = *reference_basis();
    // the sampled w1 is fine and reproduces the analytic components
    const HomodyneConfig cfg = make_custom_lo(reference_basis(), basis.w1, 0.0, 1e16);
    const double denom = std::sqrt(basis.alpha * basis.alpha + 1.0);
    CHECK(std::abs(cfg.l0 - std::complex<double>(0.0, basis.alpha / denom)) < 1e-10);
    CHECK(std::abs(cfg.l1 - std::complex<double>(1.0 / denom, 0.0)) < 1e-10);

    // a strongly shifted v0 leaks outside the span and is rejected
    const std::string msg = qtest::message_of([&] {
        (void)make_custom_lo(reference_basis(), shift_mode(basis.v0, 3e-15), 0.0, 1e16);
    });
    CHECK(msg.find("span") != std::string::npos);
}

TEST_CASE("mean signal special values") {
    const FieldState s = reference_state();
    const double amp = 2.0 * std::sqrt(reference_photons() * 1e16);

    SUBCASE("zero at zero delay and matched phases") {
        CHECK(mean_signal(s, reference_lo(LoMode::timing_w1), 0.0) == 0.0);
    }
    SUBCASE("phase offset pi/2 exposes the alpha/sqrt(alpha^2+1) background") {
        const ModeBasis& basis = *reference_basis();
        const double expected =
            amp * basis.alpha / std::sqrt(basis.alpha * basis.alpha + 1.0);
        const double got =
            mean_signal(s, reference_lo(LoMode::timing_w1, -qtiming::pi / 2.0), 0.0);
        CHECK(rel_diff(got, expected) < 1e-12);
    }
    SUBCASE("delay u0 saturates the linear term") {
        const double got =
            mean_signal(s, reference_lo(LoMode::timing_w1), reference_basis()->u0);
        CHECK(rel_diff(got, amp) < 1e-12);
    }
    SUBCASE("phase LO slope is omega0") {
        const double du = 1e-18;
        const double got = mean_signal(s, reference_lo(LoMode::phase_iv0), du);
        CHECK(rel_diff(got, amp * reference_basis()->spec.omega0 * du) < 1e-12);
    }
}

TEST_CASE("analytic mean agrees with the grid-level overlap to first order") {
    const FieldState s = reference_state();
    const HomodyneConfig cfg = reference_lo(LoMode::timing_w1);

    const double a18 = mean_signal(s, cfg, 1e-18);
    const double n18 = mean_signal_numeric(s, cfg, 1e-18);
    CHECK(rel_diff(n18, a18) < 1e-5);

    const double a17 = mean_signal(s, cfg, 1e-17);
    const double n17 = mean_signal_numeric(s, cfg, 1e-17);
    CHECK(rel_diff(n17, a17) < 1e-3);

    // the deviation is second order: x16 when du grows x4
    const double du = reference_basis()->u0;
    const double dev_full =
        1.0 - mean_signal_numeric(s, cfg, du) / mean_signal(s, cfg, du);
    const double dev_quarter =
        1.0 - mean_signal_numeric(s, cfg, du / 4.0) / mean_signal(s, cfg, du / 4.0);
    CHECK(dev_full / dev_quarter == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("variance of the balanced signal") {
    const double scale = 1.7;
    const HomodyneConfig cfg = reference_lo(LoMode::timing_w1, 0.0, 1e16, scale);

    SUBCASE("coherent input: shot noise |E|^4 N_LO") {
        CHECK(rel_diff(variance_signal(reference_state(), cfg),
                       scale * scale * 1e16) < 1e-12);
    }
    SUBCASE("symmetric squeezing scales the variance by exp(-2r)") {
        const double r = 0.9;
        const FieldState s = apply_squeezing(reference_state(), SqueezingSpec{r, r});
        CHECK(rel_diff(variance_signal(s, cfg),
                       scale * scale * 1e16 * std::exp(-2.0 * r)) < 1e-12);
    }
    SUBCASE("phase-squeezing dominates at large alpha") {
        PulseSpec spec = qtest::reference_pulse();
        spec.duration_fwhm = 1000e-15;  // alpha ~ 2e3
        const auto basis =
            std::make_shared<const ModeBasis>(build_basis(spec, make_grid(spec, 20.0)));
        const double r = std::log(2.0);  // var_P0 = 0.25
        const FieldState s = apply_squeezing(
            coherent_state(basis, spec.photon_number, 0.0), SqueezingSpec{r, 0.0});
        const HomodyneConfig big = make_lo(basis, LoMode::timing_w1, 0.0, 0.0, 1.0);
        CHECK(rel_diff(variance_signal(s, big), 0.25) < 1e-5);
    }
    SUBCASE("weak LO is rejected") {
        HomodyneConfig weak = cfg;
        weak.strong_lo = false;
        CHECK_THROWS_AS(variance_signal(reference_state(), weak), std::invalid_argument);
    }
}

TEST_CASE("minimum resolvable delay: combined limit and squeezed limit") {
    const FieldState s = reference_state();
    const HomodyneConfig w1 = reference_lo(LoMode::timing_w1);
    const ModeBasis& basis = *reference_basis();

    const double combined = min_resolvable_delay(s, w1);
    const double expected =
        1.0 / (2.0 * std::sqrt(reference_photons()) *
               std::sqrt(basis.spec.omega0 * basis.spec.omega0 +
                         basis.delta_omega * basis.delta_omega));
    CHECK(rel_diff(combined, expected) < 1e-12);
    CHECK(rel_diff(combined, 1.06339e-24) < 1e-4);
    CHECK(rel_diff(combined, timing_limit(reference_photons(), basis.spec.omega0,
                                          basis.delta_omega)) < 1e-12);

    const double r = 1.0;
    const FieldState sq = apply_squeezing(s, SqueezingSpec{r, r});
    CHECK(rel_diff(min_resolvable_delay(sq, w1), combined * std::exp(-1.0)) < 1e-12);
}

TEST_CASE("pure-strategy LOs reproduce the tof and phase limits") {
    const FieldState s = reference_state();
    const ModeBasis& basis = *reference_basis();
    CHECK(rel_diff(min_resolvable_delay(s, reference_lo(LoMode::phase_iv0)),
                   sql_phase(reference_photons(), basis.spec.omega0)) < 1e-9);
    CHECK(rel_diff(min_resolvable_delay(s, reference_lo(LoMode::tof_v1)),
                   sql_tof(reference_photons(), basis.delta_omega)) < 1e-9);
}

TEST_CASE("reciprocal-squared limits add up for the timing mode") {
    const FieldState s = reference_state();
    const double d_w1 = min_resolvable_delay(s, reference_lo(LoMode::timing_w1));
    const double d_ph = min_resolvable_delay(s, reference_lo(LoMode::phase_iv0));
    const double d_tof = min_resolvable_delay(s, reference_lo(LoMode::tof_v1));
    CHECK(rel_diff(1.0 / (d_w1 * d_w1),
                   1.0 / (d_ph * d_ph) + 1.0 / (d_tof * d_tof)) < 1e-9);
}

TEST_CASE("SQL formulas") {
    const double n = reference_photons();
    const ModeBasis& basis = *reference_basis();
    CHECK(rel_diff(sql_tof(n, basis.delta_omega), 2.10299e-23) < 1e-4);
    CHECK(rel_diff(sql_phase(n, basis.spec.omega0), 1.06476e-24) < 1e-4);
    CHECK(rel_diff(sql_phase(n, basis.spec.omega0) / sql_tof(n, basis.delta_omega),
                   basis.delta_omega / basis.spec.omega0) < 1e-12);
    CHECK_THROWS_AS(sql_tof(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sql_phase(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("snr is one at the minimum resolvable delay and linear in the delay") {
    const FieldState s = reference_state();
    const HomodyneConfig cfg = reference_lo(LoMode::timing_w1);
    const double du_min = min_resolvable_delay(s, cfg);
    CHECK(rel_diff(snr_at(s, cfg, du_min), 1.0) < 1e-12);
    CHECK(rel_diff(snr_at(s, cfg, 2.0 * du_min), 2.0) < 1e-12);

    const HomodyneConfig quad = reference_lo(LoMode::timing_w1, -qtiming::pi / 2.0);
    CHECK(snr_at(s, quad, 1e-18) < 1e-9);  // cos term suppressed
}

TEST_CASE("scale-free outputs are independent of N_LO and the detector scale") {
    const FieldState s = reference_state();
    const double a = min_resolvable_delay(s, reference_lo(LoMode::timing_w1, 0.0, 1.0, 1.0));
    const double b =
        min_resolvable_delay(s, reference_lo(LoMode::timing_w1, 0.0, 1e18, 7.3));
    CHECK(a == b);
    CHECK(rel_diff(snr_at(s, reference_lo(LoMode::timing_w1, 0.0, 1.0, 1.0), 1e-18),
                   snr_at(s, reference_lo(LoMode::timing_w1, 0.0, 1e18, 7.3), 1e-18)) <
          1e-15);
}

TEST_CASE("timing limit decreases in every resource") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double n = std::pow(10.0, 6.0 + 12.0 * uni(rng));
        const double w0 = std::pow(10.0, 14.0 + 2.0 * uni(rng));
        const double dw = w0 * (0.01 + 0.4 * uni(rng));
        const double r = 2.0 * uni(rng);
        const double base = timing_limit(n, w0, dw, std::exp(-2.0 * r),
                                         std::exp(-2.0 * r));
        CHECK(timing_limit(1.1 * n, w0, dw, std::exp(-2.0 * r), std::exp(-2.0 * r)) <
              base);
        CHECK(timing_limit(n, 1.1 * w0, dw, std::exp(-2.0 * r), std::exp(-2.0 * r)) <
              base);
        CHECK(timing_limit(n, w0, 1.1 * dw, std::exp(-2.0 * r), std::exp(-2.0 * r)) <
              base);
        CHECK(timing_limit(n, w0, dw, std::exp(-2.0 * (r + 0.1)),
                           std::exp(-2.0 * (r + 0.1))) < base);
    }
}

TEST_CASE("stats bundle and sweep/point dumps") {
    const FieldState s = reference_state();
    const HomodyneConfig cfg = reference_lo(LoMode::timing_w1);
    const HomodyneStats st = stats_at(s, cfg, 1e-18);
    CHECK(st.variance > 0.0);
    CHECK(rel_diff(st.snr, std::fabs(st.mean) / std::sqrt(st.variance)) < 1e-12);

    const std::string csv =
        delay_sweep_csv("photon_number", {1.0, 2.0}, {3.0, 4.0});
    CHECK(csv.rfind("param,value,delta_u_min_seconds\n", 0) == 0);
    CHECK(csv.find("photon_number,") != std::string::npos);

    const nlohmann::json j = nlohmann::json::parse(stats_json(s, cfg, 1e-18));
    CHECK(j["delta_u_s"] == 1e-18);
    CHECK(j["min_resolvable_delay_s"].get<double>() ==
          doctest::Approx(1.06339e-24).epsilon(1e-4));
}

TEST_CASE("mismatched bases are rejected") {
    PulseSpec other = qtest::reference_pulse();
    other.duration_fwhm = 20e-15;
    const auto basis2 =
        std::make_shared<const ModeBasis>(build_basis(other, make_grid(other)));
    const FieldState s = coherent_state(basis2, 1.0, 0.0);
    CHECK_THROWS_AS(mean_signal(s, reference_lo(LoMode::timing_w1), 0.0),
                    std::invalid_argument);
}

}  // TEST_SUITE
