#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "ecd/distributions.hpp"
#include "ecd/errors.hpp"

using namespace ecd;

namespace {

Orbit random_walk_orbit(std::uint64_t seed, std::size_t length) {
    std::mt19937_64 engine(seed);
    std::vector<double> xs(length);
    double x = 0.0;
    for (std::size_t k = 0; k < length; ++k) {
        x += double(engine() >> 11) * 0x1.0p-53 - 0.5;
        xs[k] = x;
    }
    return Orbit(std::move(xs));
}

} // namespace

TEST_CASE("marginal of a constant orbit is a point mass") {
    const Orbit orbit(std::vector<double>(8, 0.4));
    const auto part = PartitionSpec::over({0.0}, {1.0}, 10);
    const auto marginal = empirical_marginal(orbit, 0, 6, part);
    CHECK(marginal.occupied() == 1);
    CHECK(marginal.prob(4) == 1.0);
    CHECK(marginal.prob(3) == 0.0);
}

TEST_CASE("marginal of an alternating orbit splits evenly for odd m") {
    const Orbit orbit(std::vector<double>{0.05, 0.95, 0.05, 0.95, 0.05, 0.95});
    const auto part = PartitionSpec::over({0.0}, {1.0}, 10);
    const auto marginal = empirical_marginal(orbit, 0, 3, part);
    CHECK(marginal.prob(0) == 0.5);
    CHECK(marginal.prob(9) == 0.5);
}

TEST_CASE("marginal counts by hand") {
    const Orbit orbit(std::vector<double>{0.05, 0.15, 0.05, 0.15, 0.05});
    const auto part = PartitionSpec::over({0.0}, {1.0}, 10);
    const auto marginal = empirical_marginal(orbit, 0, 4, part);
    CHECK(marginal.prob(0) == 3.0 / 5.0);
    CHECK(marginal.prob(1) == 2.0 / 5.0);
    double sum = 0.0;
    for (const auto& [bin, p] : marginal.probs()) {
        sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("joint distributions of simple orbits") {
    const auto part = PartitionSpec::over({0.0}, {1.0}, 10);

    const Orbit constant(std::vector<double>(8, 0.4));
    const auto joint_constant = empirical_joint(constant, 0, 5, part);
    CHECK(joint_constant.prob({4, 4}) == 1.0);
    CHECK(joint_constant.counts().size() == 1);

    const Orbit alternating(std::vector<double>{0.05, 0.95, 0.05, 0.95, 0.05, 0.95});
    const auto joint_alt = empirical_joint(alternating, 0, 3, part);
    CHECK(joint_alt.prob({0, 9}) == 0.5);
    CHECK(joint_alt.prob({9, 0}) == 0.5);

    const Orbit pairs(std::vector<double>{0.05, 0.15, 0.05, 0.15, 0.05, 0.15});
    const auto joint = empirical_joint(pairs, 0, 4, part);
    CHECK(joint.prob({0, 1}) == 3.0 / 5.0);
    CHECK(joint.prob({1, 0}) == 2.0 / 5.0);
}

TEST_CASE("row marginal equals the window marginal exactly") {
    const Orbit orbit = random_walk_orbit(7, 400);
    const auto part = PartitionSpec::spanning(orbit, 0, 399, 6);
    const auto marginal = empirical_marginal(orbit, 10, 300, part);
    const auto joint = empirical_joint(orbit, 10, 300, part);

    CHECK(joint.row_counts() == marginal.counts());
    const auto derived = joint.row_marginal();
    CHECK(derived.counts() == marginal.counts());
    for (const auto& [bin, p] : marginal.probs()) {
        CHECK(derived.prob(bin) == p); // same integer count over the same total
    }
}

TEST_CASE("window length preconditions") {
    const Orbit orbit(std::vector<double>{0.1, 0.2, 0.3, 0.4});
    const auto part = PartitionSpec::over({0.0}, {1.0}, 4);
    CHECK_NOTHROW(empirical_marginal(orbit, 0, 3, part));
    CHECK_THROWS_AS(empirical_marginal(orbit, 1, 3, part), std::length_error);
    CHECK_NOTHROW(empirical_joint(orbit, 0, 2, part));
    CHECK_THROWS_AS(empirical_joint(orbit, 0, 3, part), std::length_error);
    CHECK_THROWS_AS(empirical_marginal(orbit, 0, 0, part), std::invalid_argument);
}

TEST_CASE("channel rows from hand-built counts") {
    const auto part = PartitionSpec::over({0.0}, {1.0}, 2);
    const Window window{0, 3};

    SUBCASE("identity") {
        const EmpiricalJoint joint(part, window, {{{0, 0}, 4}}, 4);
        const EmpiricalMarginal marginal(part, window, {{0, 4}}, 4);
        const auto channel = channel_from(joint, marginal);
        CHECK(channel.rows().at(0).at(0) == 1.0);
        CHECK(channel.row_entropy(0) == 0.0);
    }

    SUBCASE("permutation") {
        const EmpiricalJoint joint(part, window, {{{0, 1}, 2}, {{1, 0}, 2}}, 4);
        const EmpiricalMarginal marginal(part, window, {{0, 2}, {1, 2}}, 4);
        const auto channel = channel_from(joint, marginal);
        CHECK(channel.rows().at(0).at(1) == 1.0);
        CHECK(channel.rows().at(1).at(0) == 1.0);
    }

    SUBCASE("branching row") {
        const EmpiricalJoint joint(part, window, {{{0, 0}, 1}, {{0, 1}, 1}, {{1, 0}, 2}}, 4);
        const EmpiricalMarginal marginal(part, window, {{0, 2}, {1, 2}}, 4);
        const auto channel = channel_from(joint, marginal);
        CHECK(channel.rows().at(0).at(0) == 0.5);
        CHECK(channel.rows().at(0).at(1) == 0.5);
        CHECK(channel.rows().at(1).at(0) == 1.0);
        CHECK(channel.row_entropy(0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    }
}

TEST_CASE("channel pushes the time-n distribution to time n+1") {
    const Orbit orbit = random_walk_orbit(11, 600);
    const auto part = PartitionSpec::spanning(orbit, 0, 599, 5);
    const auto marginal = empirical_marginal(orbit, 20, 500, part);
    const auto joint = empirical_joint(orbit, 20, 500, part);
    const auto channel = channel_from(joint, marginal);

    for (const auto& [bin, row] : channel.rows()) {
        double sum = 0.0;
        for (const auto& [successor, p] : row) {
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }

    const auto pushed = channel.apply(marginal.probs());
    const auto columns = joint.column_counts();
    for (const auto& [bin, count] : columns) {
        const double expected = double(count) / double(joint.total());
        CHECK(pushed.at(bin) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("mismatched pairs are rejected") {
    const auto part = PartitionSpec::over({0.0}, {1.0}, 2);
    const EmpiricalJoint joint(part, Window{0, 3}, {{{0, 1}, 2}, {{1, 0}, 2}}, 4);

    const EmpiricalMarginal other_window(part, Window{1, 3}, {{0, 2}, {1, 2}}, 4);
    CHECK_THROWS_AS(channel_from(joint, other_window), consistency_error);

    const EmpiricalMarginal missing_row(part, Window{0, 3}, {{0, 4}}, 4);
    CHECK_THROWS_AS(channel_from(joint, missing_row), consistency_error);
}

TEST_CASE("count constructors validate their inputs") {
    const auto part = PartitionSpec::over({0.0}, {1.0}, 2);
    const Window window{0, 3};
    CHECK_THROWS_AS(EmpiricalMarginal(part, window, {{0, 3}}, 4), consistency_error);
    CHECK_THROWS_AS(EmpiricalMarginal(part, window, {{5, 4}}, 4), std::invalid_argument);
    CHECK_THROWS_AS(EmpiricalMarginal(part, window, {{0, 0}, {1, 4}}, 4), std::invalid_argument);
    CHECK_THROWS_AS(EmpiricalJoint(part, window, {{{0, 5}, 4}}, 4), std::invalid_argument);
}
