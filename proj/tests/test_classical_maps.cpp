#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ecd/classical_maps.hpp"
#include "ecd/errors.hpp"

using namespace ecd;
using namespace ecd::maps;

TEST_CASE("logistic step values and domain") {
    CHECK(logistic_step(0.0, 3.3) == 0.0);
    CHECK(logistic_step(0.5, 4.0) == 1.0);
    CHECK(logistic_step(0.3, 3.7) == doctest::Approx(0.777).epsilon(1e-15));
    CHECK_THROWS_AS(logistic_step(-0.1, 2.0), std::out_of_range);
    CHECK_THROWS_AS(logistic_step(1.1, 2.0), std::out_of_range);
    CHECK_THROWS_AS(logistic_step(0.5, 4.5), std::out_of_range);
    CHECK_THROWS_AS(logistic_step(0.5, -0.5), std::out_of_range);
}

TEST_CASE("baker step branches") {
    CHECK(baker_step({0.0, 0.0}) == std::array{0.0, 0.0});
    CHECK(baker_step({0.25, 0.5}) == std::array{0.5, 0.25});
    CHECK(baker_step({0.75, 0.0}) == std::array{0.5, 0.5});
    CHECK_THROWS_AS(baker_step({1.2, 0.5}), std::out_of_range);
    CHECK_THROWS_AS(baker_step({0.5, -0.1}), std::out_of_range);
}

TEST_CASE("tinkerbell step values") {
    CHECK(tinkerbell_step({0.0, 0.0}, 0.9, -0.6013, 2.0, 0.5) == std::array{0.0, 0.0});
    CHECK(tinkerbell_step({1.0, 0.0}, 0.0, 0.0, 0.0, 0.0) == std::array{1.0, 0.0});
    // x' = x^2 - y^2 + a x + b y = 0.09 - 0.06013, y' = 2xy + cx + dy
    const auto p = tinkerbell_step({0.1, 0.1}, 0.9, -0.6013, 2.0, 0.5);
    CHECK(p[0] == doctest::Approx(0.02987).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(0.27).epsilon(1e-14));
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(tinkerbell_step({inf, 0.0}, 0.9, -0.6013, 2.0, 0.5), std::invalid_argument);
}

TEST_CASE("orbit iterates from x0") {
    const Orbit fixed = orbit({MapFamily::logistic, {2.0}, {0.5}}, 3);
    CHECK(fixed.size() == 3);
    CHECK(fixed.scalar(0) == 0.5);
    CHECK(fixed.scalar(1) == 0.5);
    CHECK(fixed.scalar(2) == 0.5);

    const Orbit chaotic = orbit({MapFamily::logistic, {4.0}, {0.3}}, 3);
    CHECK(chaotic.scalar(0) == 0.3);
    CHECK(chaotic.scalar(1) == doctest::Approx(0.84).epsilon(1e-15));
    CHECK(chaotic.scalar(2) == doctest::Approx(0.5376).epsilon(1e-15));

    const Orbit pinned = orbit({MapFamily::baker, {}, {0.0, 0.0}}, 5);
    CHECK(pinned.dims() == 2);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(pinned.point(k)[0] == 0.0);
        CHECK(pinned.point(k)[1] == 0.0);
    }
}

TEST_CASE("orbit validates spec arity and domain") {
    CHECK_THROWS_AS(orbit({MapFamily::logistic, {2.0, 3.0}, {0.5}}, 4), std::invalid_argument);
    CHECK_THROWS_AS(orbit({MapFamily::logistic, {2.0}, {0.5, 0.5}}, 4), std::invalid_argument);
    CHECK_THROWS_AS(orbit({MapFamily::logistic, {2.0}, {1.5}}, 4), std::out_of_range);
    CHECK_THROWS_AS(orbit({MapFamily::baker, {1.0}, {0.5, 0.5}}, 4), std::invalid_argument);
    CHECK_THROWS_AS(orbit({MapFamily::baker, {}, {0.5, 1.5}}, 4), std::out_of_range);
    CHECK_THROWS_AS(orbit({MapFamily::tinkerbell, {0.9}, {0.1, 0.1}}, 4), std::invalid_argument);
    CHECK_THROWS_AS(orbit({MapFamily::logistic, {2.0}, {0.5}}, 0), std::invalid_argument);
}

TEST_CASE("logistic orbits stay inside the unit interval") {
    std::mt19937_64 engine(7);
    for (int trial = 0; trial < 20; ++trial) {
        const double mu = 4.0 * (double(engine() >> 11) * 0x1.0p-53);
        const double x0 = double(engine() >> 11) * 0x1.0p-53;
        const Orbit o = orbit({MapFamily::logistic, {mu}, {x0}}, 2'000);
        for (std::size_t k = 0; k < o.size(); ++k) {
            const double x = o.scalar(k);
            REQUIRE(x >= 0.0);
            REQUIRE(x <= 1.0);
        }
    }
}

TEST_CASE("orbits are bitwise reproducible") {
    const MapSpec spec{MapFamily::logistic, {3.99}, {0.123}};
    const Orbit a = orbit(spec, 10'000);
    const Orbit b = orbit(spec, 10'000);
    CHECK(a.flat() == b.flat());

    const MapSpec tink{MapFamily::tinkerbell,
                       {tinkerbell_default_params[0], tinkerbell_default_params[1],
                        tinkerbell_default_params[2], tinkerbell_default_params[3]},
                       {-0.72, -0.64}};
    const Orbit c = orbit(tink, 5'000);
    const Orbit d = orbit(tink, 5'000);
    CHECK(c.flat() == d.flat());
}

TEST_CASE("tinkerbell divergence carries the failing step") {
    const MapSpec runaway{MapFamily::tinkerbell, {3.0, 2.0, 2.0, 2.0}, {1.0, 1.0}};

    // reference loop to find the first guarded step
    std::array<double, 2> p{1.0, 1.0};
    std::size_t expected = 0;
    for (std::size_t k = 1; k < 100; ++k) {
        p = tinkerbell_step(p, 3.0, 2.0, 2.0, 2.0);
        if (!std::isfinite(std::hypot(p[0], p[1])) || std::hypot(p[0], p[1]) > divergence_guard) {
            expected = k;
            break;
        }
    }
    REQUIRE(expected > 0);

    try {
        orbit(runaway, 100);
        FAIL("expected divergence");
    } catch (const divergence_error& e) {
        CHECK(e.step() == expected);
    }
}

TEST_CASE("iterate_map runs user-supplied steps") {
    const auto shift = [](const std::vector<double>& p) {
        return std::vector<double>{p[1], p[0] + 1.0};
    };
    const Orbit o = iterate_map({0.0, 0.0}, shift, 4);
    CHECK(o.dims() == 2);
    CHECK(o.point(1)[1] == 1.0);
    CHECK(o.point(2)[0] == 1.0);

    const auto broken = [](const std::vector<double>&) { return std::vector<double>{1.0}; };
    CHECK_THROWS_AS(iterate_map({0.0, 0.0}, broken, 3), std::invalid_argument);
}
