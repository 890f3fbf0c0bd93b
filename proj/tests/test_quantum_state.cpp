#include <cmath>
#include <random>

#include "doctest.h"
#include "json.hpp"

#include "qtiming/quantum_state.hpp"
#include "test_helpers.hpp"

using namespace qtiming;
using qtest::reference_basis;
using qtest::rel_diff;

TEST_SUITE("quantum_state") {

TEST_CASE("photon budget from power") {
    const double omega0 = qtest::reference_omega0();
    const double n = photons_from_power(0.01, 1.0, omega0);
    CHECK(rel_diff(n, 4.0776e16) < 1e-3);
    CHECK(rel_diff(n, 0.01 * 1.0 / (hbar * omega0)) < 1e-15);

    CHECK(photons_from_power(0.01, 2.0, omega0) == 2.0 * n);  // linear in T
    CHECK(photons_from_power(0.04, 1.0, omega0) == 4.0 * n);  // linear in P
    CHECK_THROWS_AS(photons_from_power(0.0, 1.0, omega0), std::invalid_argument);
    CHECK_THROWS_AS(photons_from_power(0.01, -1.0, omega0), std::invalid_argument);
}

TEST_CASE("coherent state means and variances") {
    const double n = qtest::reference_photons();
    const FieldState s = coherent_state(reference_basis(), n, 0.0);
    CHECK(s.v0.mean_q == 2.0 * std::sqrt(n));
    CHECK(s.v0.mean_p == 0.0);
    CHECK(rel_diff(s.v0.mean_q, 4.0386e8) < 1e-3);
    for (const QuadratureState& q : {s.v0, s.v1}) {
        CHECK(q.var_q == 1.0);
        CHECK(q.var_p == 1.0);
    }
    CHECK(s.v1.mean_q == 0.0);
    CHECK(s.v1.mean_p == 0.0);

    const FieldState rot = coherent_state(reference_basis(), n, 0.7313);
    CHECK(rel_diff((rot.v0.mean_q * rot.v0.mean_q + rot.v0.mean_p * rot.v0.mean_p) / 4.0,
                   n) < 1e-9);

    CHECK_THROWS_AS(coherent_state(reference_basis(), 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(coherent_state(nullptr, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("mode lookup by label") {
    const FieldState s = coherent_state(reference_basis(), 1.0, 0.0);
    CHECK(&s.mode("v0") == &s.v0);
    CHECK(&s.mode("v1") == &s.v1);
    CHECK_THROWS_AS(s.mode("w1"), std::invalid_argument);
}

TEST_CASE("squeezing with r = 0 is the identity") {
    const FieldState s = coherent_state(reference_basis(), 2.0, 0.4);
    const FieldState sq = apply_squeezing(s, SqueezingSpec{0.0, 0.0});
    CHECK(sq.v0.var_p == s.v0.var_p);
    CHECK(sq.v0.var_q == s.v0.var_q);
    CHECK(sq.v1.var_p == s.v1.var_p);
    CHECK(sq.v1.var_q == s.v1.var_q);
    CHECK(sq.v0.mean_q == s.v0.mean_q);
}

TEST_CASE("10 dB of squeezing gives variance 0.1 at unit uncertainty product") {
    const double r = std::log(10.0) / 2.0;  // exp(-2r) = 0.1
    const FieldState s =
        apply_squeezing(coherent_state(reference_basis(), 2.0, 0.0), SqueezingSpec{r, r});
    CHECK(rel_diff(s.v0.var_p, 0.1) < 1e-12);
    CHECK(rel_diff(s.v0.var_q, 10.0) < 1e-12);
    CHECK(rel_diff(s.v1.var_q, 0.1) < 1e-12);
    CHECK(rel_diff(s.v1.var_p, 10.0) < 1e-12);
    CHECK(rel_diff(s.v0.var_p * s.v0.var_q, 1.0) < 1e-12);
    CHECK(s.v0.mean_q == 2.0 * std::sqrt(2.0));  // means untouched

    CHECK_THROWS_AS(apply_squeezing(s, SqueezingSpec{-0.1, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("inverse squeezing restores the variances") {
    const SqueezingSpec spec{0.83, 1.21};
    const FieldState s = coherent_state(reference_basis(), 5.0, 0.1);
    const FieldState back = apply_inverse_squeezing(apply_squeezing(s, spec), spec);
    CHECK(rel_diff(back.v0.var_p, 1.0) < 1e-12);
    CHECK(rel_diff(back.v0.var_q, 1.0) < 1e-12);
    CHECK(rel_diff(back.v1.var_q, 1.0) < 1e-12);
    CHECK(rel_diff(back.v1.var_p, 1.0) < 1e-12);
}

TEST_CASE("pure states keep a unit uncertainty product") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 2.0);
    const FieldState base = coherent_state(reference_basis(), 1.0, 0.0);
    for (int i = 0; i < 50; ++i) {
        const FieldState s =
            apply_squeezing(base, SqueezingSpec{uni(rng), uni(rng)});
        CHECK(rel_diff(s.v0.var_q * s.v0.var_p, 1.0) < 1e-12);
        CHECK(rel_diff(s.v1.var_q * s.v1.var_p, 1.0) < 1e-12);
        s.v0.validate();
        s.v1.validate();
    }
}

TEST_CASE("quadrature validation") {
    QuadratureState q;
    q.var_q = 0.5;
    q.var_p = 0.5;  // product below the uncertainty bound
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q.var_q = -1.0;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}

TEST_CASE("state dump lists both tracked modes") {
    const double r = 0.3;
    const FieldState s =
        apply_squeezing(coherent_state(reference_basis(), 4.0, 0.0), SqueezingSpec{r, 0.0});
    const nlohmann::json j = nlohmann::json::parse(state_json(s));
    REQUIRE(j["modes"].size() == 2);
    CHECK(j["modes"][0]["mode"] == "v0");
    CHECK(j["modes"][1]["mode"] == "v1");
    CHECK(rel_diff(j["modes"][0]["var_p"].get<double>(), std::exp(-2.0 * r)) < 1e-12);
    CHECK(j["modes"][0]["mean_q"].get<double>() == 4.0);
    CHECK(j["modes"][1]["var_q"].get<double>() == 1.0);
}

}  // TEST_SUITE
