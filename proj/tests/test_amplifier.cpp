#include <doctest.h>

#include "entropyne/amplifier.hpp"
#include "entropyne/errors.hpp"
#include "entropyne/fock_oracle.hpp"

#include <cmath>
#include <numbers>

using namespace entropyne;
using namespace entropyne::amplifier;

namespace {
const AmplifierConfig kPumped{1.0, 3.0, 0.1, 0.0, 1.0};
}

TEST_CASE("Hamiltonian coefficients") {
    const auto k0 = amplifier_hamiltonian({1.0, 3.0, 0.0, 0.4, 1.0});
    CHECK(k0.omega1 == doctest::Approx(0.5));
    CHECK(k0.omega3 == doctest::Approx(0.5));
    CHECK(std::abs(k0.omega2) == doctest::Approx(0.0));

    const auto quarter = amplifier_hamiltonian({1.0, 3.0, 0.1, std::numbers::pi / 6, 1.0});
    CHECK(quarter.omega1 == doctest::Approx(0.5));
    CHECK(quarter.omega2.real() == doctest::Approx(0.1));
    CHECK(quarter.omega3 == doctest::Approx(0.5));

    CHECK_THROWS_AS(amplifier_hamiltonian({0.0, 3.0, 0.1, 0.0, 1.0}), Error);
    CHECK_THROWS_AS(amplifier_hamiltonian({1.0, 3.0, -0.1, 0.0, 1.0}), Error);
}

TEST_CASE("thermal light") {
    const auto vac = thermal_light_covariance({0.0, 1.0}, 2.0);
    CHECK(vac.sigma_pp == doctest::Approx(1.0));
    CHECK(vac.sigma_qq == doctest::Approx(0.25));
    CHECK(vac.det() == doctest::Approx(0.25));
    const auto one = thermal_light_covariance({1.0, 1.0}, 1.0);
    CHECK(one.sigma_pp == doctest::Approx(1.5));
    CHECK(gaussian::purity(one) == doctest::Approx(1.0 / 3.0));
    CHECK(thermal_light_entropy(1.0) == doctest::Approx(std::log(4.0)));
    CHECK(thermal_light_entropy(0.0) == 0.0);

    CHECK(nbar_from_temperature(1.0 / std::log(2.0), 1.0) == doctest::Approx(1.0));
    CHECK(nbar_from_temperature(10.0, 1.0) == doctest::Approx(9.508331944775042).epsilon(1e-13));
    CHECK(nbar_from_temperature(1e-3, 1.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(nbar_from_temperature(0.0, 1.0), Error);
}

TEST_CASE("energy cancellation at t = 0") {
    for (double k : {0.0, 0.1, 0.3, 0.45}) {
        const auto h = amplifier_hamiltonian({1.0, 3.0, k, 0.0, 1.0});
        for (double nbar : {0.0, 1.0, 4.0}) {
            const auto c = thermal_light_covariance({nbar, 1.0}, 1.0);
            CHECK(std::abs(gaussian::mean_energy(c, h) - (1 + 2 * nbar) / 2) < 1e-12);
        }
    }
}

TEST_CASE("k = 0 exactness") {
    const AmplifierConfig k0{1.0, 3.0, 0.0, 0.0, 1.0};
    for (double nbar : {0.5, 1.0, 2.0, 5.0}) {
        const double t = 1.0 / std::log1p(1.0 / nbar);
        CHECK(std::abs(amplifier_delta(k0, nbar, t).delta) <= 1e-9);
        CHECK(amplifier_delta(k0, nbar, 0.8 * t).delta > 0.0);
        CHECK(amplifier_delta(k0, nbar, 1.2 * t).delta > 0.0);
    }
    CHECK(delta_argmin_temperature(k0, 2.0, {0.1, 20.0}) == doctest::Approx(2.4663034623764317).epsilon(1e-6));
    CHECK(delta_argmin_temperature(k0, 200.0, {1.0, 2000.0}) / 200.0 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("minimum location with the pump on") {
    const double w = std::sqrt(amplifier_hamiltonian(kPumped).effective_frequency_squared());
    for (double nbar : {1.0, 2.0, 3.0, 5.0}) {
        const double t_star = delta_argmin_temperature(kPumped, nbar, {0.1, 10 * nbar});
        CHECK(t_star == doctest::Approx(w / std::log1p(1.0 / nbar)).epsilon(1e-5));
    }
    const double t3 = delta_argmin_temperature(kPumped, 3.0, {0.1, 30.0});
    CHECK(std::abs(t3 - 3.476059496782208) / 3.476059496782208 <= 0.10);

    try {
        delta_argmin_temperature(kPumped, 3.0, {0.1, 1.0});
        FAIL("expected BracketError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BracketError);
    }
    CHECK_THROWS_AS(delta_argmin_temperature(kPumped, 3.0, {2.0, 1.0}), Error);
}

TEST_CASE("Delta surface") {
    const auto g = amplifier_delta_surface(kPumped, GridSpec::parse("0.2:10:40"), GridSpec::parse("0.2:10:30"));
    CHECK(g.axis1_name == "nbar");
    CHECK(g.axis2_name == "T");
    CHECK(g.cells.size() == 1200u);
    CHECK(g.flagged_count() == 0u);
    for (const auto& c : g.cells) CHECK(*c >= -1e-9);

    const auto par = amplifier_delta_surface(kPumped, GridSpec::parse("0.2:10:40"), GridSpec::parse("0.2:10:30"), 8);
    CHECK(par.cells == g.cells);

    try {
        amplifier_delta_surface({1.0, 3.0, 0.6, 0.0, 1.0}, GridSpec::parse("0.2:10:5"), GridSpec::parse("0.2:10:5"));
        FAIL("expected DivergentPartition");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DivergentPartition);
    }
    CHECK_THROWS_AS(amplifier_delta_surface(kPumped, GridSpec::parse("-1:1:5"), GridSpec::parse("1:2:2")), Error);
}

TEST_CASE("Delta against the Fock oracle") {
    const auto h = amplifier_hamiltonian(kPumped);
    for (auto [nbar, t] : {std::pair{2.0, 2.0}, std::pair{0.5, 1.0}, std::pair{1.0, 3.0}, std::pair{3.0, 0.7},
                           std::pair{2.5, 4.0}}) {
        const double closed = amplifier_delta(kPumped, nbar, t).delta;
        const double oracle = fock::thermal_light_delta(h, nbar, t, {250, 1.0}).delta;
        CHECK(std::abs(closed - oracle) <= 1e-7);
        CHECK(closed >= 0.0);
    }
}
