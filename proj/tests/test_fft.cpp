#include <cmath>
#include <random>

#include "doctest.h"

#include "qtiming/fft.hpp"
#include "qtiming/mode_lab.hpp"
#include "test_helpers.hpp"

using namespace qtiming;
using qtest::gaussian_tau;

namespace {

SampledMode reference_envelope() {
    const PulseSpec spec = qtest::reference_pulse();
    return make_envelope(spec, make_grid(spec));
}

}  // namespace

TEST_SUITE("fft") {

TEST_CASE("forward then inverse transform is the identity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<fft::cplx> data(1024), orig;
    for (auto& z : data) z = {uni(rng), uni(rng)};
    orig = data;

    fft::transform(data, -1);
    fft::transform(data, +1);
    double worst = 0.0;
    for (std::size_t k = 0; k < data.size(); ++k) {
        worst = std::max(worst,
                         std::abs(data[k] / static_cast<double>(data.size()) - orig[k]));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("transform rejects non-power-of-two lengths and bad signs") {
    std::vector<fft::cplx> data(100);
    CHECK_THROWS_AS(fft::transform(data, +1), std::invalid_argument);
    std::vector<fft::cplx> ok(16);
    CHECK_THROWS_AS(fft::transform(ok, 2), std::invalid_argument);
}

TEST_CASE("analyze matches the closed-form gaussian spectrum") {
    const SampledMode g = reference_envelope();
    const Spectrum s = analyze(g);
    const double tau = gaussian_tau();
    // g(u) = (pi tau^2)^(-1/4) exp(-u^2 / 2 tau^2)
    //   -> S(w) = (4 pi tau^2)^(1/4) exp(-w^2 tau^2 / 2)
    const double peak = std::pow(4.0 * qtiming::pi * tau * tau, 0.25);
    const std::size_t mid = s.size() / 2;
    CHECK(s.omega[mid] == 0.0);
    CHECK(qtest::rel_diff(s.amplitude[mid].real(), peak) < 1e-10);
    CHECK(std::fabs(s.amplitude[mid].imag()) < 1e-12 * peak);
    for (std::size_t k = mid - 40; k <= mid + 40; k += 5) {
        const double expected =
            peak * std::exp(-0.5 * s.omega[k] * s.omega[k] * tau * tau);
        CHECK(std::fabs(s.amplitude[k].real() - expected) < 1e-10 * peak);
        CHECK(std::fabs(s.amplitude[k].imag()) < 1e-10 * peak);
    }
}

TEST_CASE("analyze satisfies Parseval and synthesize inverts it") {
    const SampledMode g = reference_envelope();
    const Spectrum s = analyze(g);

    double time_energy = 0.0;
    for (const auto& z : g.amplitude) time_energy += std::norm(z);
    time_energy *= g.grid.t_step;
    double freq_energy = 0.0;
    for (const auto& z : s.amplitude) freq_energy += std::norm(z);
    freq_energy *= s.d_omega / (2.0 * qtiming::pi);
    CHECK(qtest::rel_diff(freq_energy, time_energy) < 1e-12);

    const SampledMode back = synthesize(s, g.grid, "g0");
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        worst = std::max(worst, std::abs(back.amplitude[k] - g.amplitude[k]));
    }
    CHECK(worst < 1e-13 * std::abs(g.amplitude[g.size() / 2]));
}

TEST_CASE("spectral derivative matches the analytic gaussian derivative") {
    const SampledMode g = reference_envelope();
    const SampledMode dg = derivative(g);
    const double tau = gaussian_tau();
    const double peak = std::fabs(g.amplitude[g.size() / 2].real());
    for (std::size_t k = 0; k < g.size(); k += 97) {
        const double u = g.grid.time_at(k);
        const double expected = -u / (tau * tau) * g.amplitude[k].real();
        CHECK(std::fabs(dg.amplitude[k].real() - expected) < 1e-9 * peak / tau);
        CHECK(std::fabs(dg.amplitude[k].imag()) < 1e-9 * peak / tau);
    }
}

TEST_CASE("spectral shift matches the analytically shifted gaussian") {
    const SampledMode g = reference_envelope();
    const double du = 3.7e-15;
    const SampledMode shifted = shift_mode(g, du);
    const double tau = gaussian_tau();
    const double amp = std::pow(qtiming::pi * tau * tau, -0.25);
    const double peak = amp;
    for (std::size_t k = 0; k < g.size(); k += 53) {
        const double u = g.grid.time_at(k) - du;
        const double expected = amp * std::exp(-u * u / (2.0 * tau * tau));
        CHECK(std::fabs(shifted.amplitude[k].real() - expected) < 1e-9 * peak);
        CHECK(std::fabs(shifted.amplitude[k].imag()) < 1e-9 * peak);
    }
}

}  // TEST_SUITE
