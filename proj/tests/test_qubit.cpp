#include <doctest.h>

#include "entropyne/errors.hpp"
#include "entropyne/qubit.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace entropyne;
using namespace entropyne::qubit;

namespace {
const double kPi = std::numbers::pi;
const BlochHamiltonian kFieldZ{0.0, {0.0, 0.0, std::sqrt(14.0)}};
}  // namespace

TEST_CASE("Bloch state validation") {
    CHECK_NOTHROW(BlochState::make({0.0, 0.0, 1.0}));
    CHECK_NOTHROW(BlochState::make({0.6, 0.8, 0.0}));
    try {
        BlochState::make({0.8, 0.8, 0.0});
        FAIL("expected BlochNormExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BlochNormExceeded);
    }
}

TEST_CASE("closed forms against matrices") {
    const auto s = BlochState::make({0.0, 0.0, 0.5});
    const auto rho = density_from_bloch(s);
    CHECK(rho(0, 0).real() == doctest::Approx(0.75));
    CHECK(rho(1, 1).real() == doctest::Approx(0.25));
    CHECK(bloch_entropy(0.0) == doctest::Approx(std::log(2.0)));
    CHECK(bloch_entropy(1.0) == doctest::Approx(0.0));
    CHECK(bloch_entropy(0.4) == doctest::Approx(0.6108643020548935).epsilon(1e-13));

    const BlochHamiltonian bh{0.0, {0.0, 0.0, 2.0}};
    CHECK(qubit_log_partition(bh, 1.0) == doctest::Approx(1.1269280110429725).epsilon(1e-14));
    CHECK(std::exp(qubit_log_partition(bh, 1.0)) == doctest::Approx(2.0 * std::cosh(1.0)));
    const BlochHamiltonian shifted{1.5, {0.0, 0.0, 2.0}};
    CHECK(qubit_log_partition(shifted, 2.0) == doctest::Approx(-0.375 + std::log(2.0 * std::cosh(0.5))));
    CHECK(qubit_log_partition(BlochHamiltonian{0.0, {0.0, 0.0, 2000.0}}, 1.0) == doctest::Approx(1000.0));

    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u;
    for (int k = 0; k < 500; ++k) {
        Vec3 dir{g(rng), g(rng), g(rng)};
        const double r = u(rng) / norm(dir);
        const auto st = BlochState::make({dir[0] * r, dir[1] * r, dir[2] * r});
        const BlochHamiltonian h{g(rng), {g(rng), g(rng), g(rng)}};
        const double t = (k % 2 ? -1.0 : 1.0) * (0.2 + 4.0 * u(rng));
        const auto o = qubit_observables(st, h, t);
        const auto rm = density_from_bloch(st);
        const auto hm = hamiltonian_from_bloch(h);
        CHECK(o.energy == doctest::Approx(trace_product(rm, hm)).epsilon(1e-12));
        CHECK(std::abs(o.entropy - von_neumann_entropy(rm)) < 1e-10);
        CHECK(std::abs(o.log_partition - log_partition(hm, t)) < 1e-10);
    }
}

TEST_CASE("equilibrium state and temperature") {
    const auto p = equilibrium_bloch(kFieldZ, 2.0);
    CHECK(p.p[2] == doctest::Approx(-std::tanh(std::sqrt(14.0) / 4.0)));
    CHECK(equilibrium_bloch(BlochHamiltonian{}, 1.0).norm() == 0.0);
    CHECK(equilibrium_temperature(0.01, std::sqrt(14.0), 1) == doctest::Approx(187.07663307674785).epsilon(1e-12));
    CHECK(equilibrium_temperature(0.99, std::sqrt(14.0), -1) == doctest::Approx(-0.7068660337294458).epsilon(1e-12));
    CHECK_THROWS_AS(equilibrium_temperature(1.0, 1.0, 1), Error);
    CHECK_THROWS_AS(equilibrium_temperature(0.0, 1.0, 1), Error);
}

TEST_CASE("zero locus of Delta") {
    const double t1 = equilibrium_temperature(0.01, kFieldZ.norm(), 1);
    CHECK(std::abs(qubit_delta(0.01, kPi, kFieldZ, t1).delta) < 1e-8);
    const double t2 = equilibrium_temperature(0.99, kFieldZ.norm(), 1);
    CHECK(std::abs(qubit_delta(0.99, kPi, kFieldZ, t2).delta) < 1e-8);
    CHECK(std::abs(qubit_delta(0.99, 0.0, kFieldZ, -t2).delta) < 1e-8);
    CHECK(qubit_delta(0.99, 0.0, kFieldZ, t2).delta > 0.0);
    CHECK(qubit_delta(0.99, kPi, kFieldZ, -t2).delta < 0.0);
}

TEST_CASE("Delta grids") {
    SUBCASE("shape and minimum for the small-p example") {
        const auto g = qubit_delta_grid(0.01, {0.0, {0.0, 0.0, 3.7416574}}, GridSpec::parse("0:3.14159265:181"),
                                        GridSpec::parse("150:220:141"));
        CHECK(g.cells.size() == 181u * 141u);
        std::size_t best = 0;
        for (std::size_t k = 0; k < g.cells.size(); ++k) {
            if (std::abs(*g.cells[k]) < std::abs(*g.cells[best])) best = k;
        }
        CHECK(best / 141 == 180);
        CHECK(g.axis2_values[best % 141] == doctest::Approx(187.0).epsilon(0.002));
    }

    SUBCASE("p = 0 rows do not depend on theta") {
        const auto g = qubit_delta_grid(0.0, kFieldZ, GridSpec::parse("0:3:7"), GridSpec::parse("1:2:5"));
        for (std::size_t i = 1; i < 7; ++i) {
            for (std::size_t j = 0; j < 5; ++j) CHECK(*g.at(i, j) == doctest::Approx(*g.at(0, j)).epsilon(1e-14));
        }
    }

    SUBCASE("mixed-sign and zero temperatures") {
        try {
            qubit_delta_grid(0.5, kFieldZ, GridSpec::parse("0:1:3"), GridSpec::parse("-1:1:5"));
            FAIL("expected UsageError");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UsageError);
        }
        CHECK_THROWS_AS(qubit_delta_grid(0.5, kFieldZ, GridSpec::parse("0:1:3"), GridSpec::parse("0:1:3")), Error);
    }

    SUBCASE("thread count does not change values") {
        const auto a = qubit_delta_grid(0.7, kFieldZ, GridSpec::parse("0:3:31"), GridSpec::parse("-2:-0.1:40"), 1);
        const auto b = qubit_delta_grid(0.7, kFieldZ, GridSpec::parse("0:3:31"), GridSpec::parse("-2:-0.1:40"), 8);
        CHECK(a.cells == b.cells);
    }
}
