#include "ecd/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "ecd/classical_maps.hpp"
#include "ecd/errors.hpp"
#include "ecd/pauli_oracle.hpp"
#include "ecd/spin.hpp"

namespace ecd::selfcheck {

namespace {

constexpr std::size_t default_skip = 10'000;
constexpr std::size_t default_window = 100'000;

std::string format(const char* fmt, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

double uniform(std::mt19937_64& engine, double lo, double hi) {
    return lo + (hi - lo) * (double(engine() >> 11) * 0x1.0p-53);
}

spin::Vec3 random_unit(std::mt19937_64& engine) {
    const double z = uniform(engine, -1.0, 1.0);
    const double phi = uniform(engine, 0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

} // namespace

double dense_chaos_degree(const Orbit& orbit, std::size_t skip, std::size_t m,
                          const PartitionSpec& partition) {
    const std::size_t dims = partition.dims();
    const std::uint64_t per_axis = partition.bins_per_axis;
    std::uint64_t bins = 1;
    for (std::size_t d = 0; d < dims; ++d) {
        bins *= per_axis;
    }

    const auto locate = [&](std::span<const double> x) {
        std::uint64_t index = 0;
        for (std::size_t d = 0; d < dims; ++d) {
            const double width = partition.hi[d] - partition.lo[d];
            std::uint64_t cell = 0;
            if (width > 0.0) {
                cell = static_cast<std::uint64_t>(
                    std::floor(double(per_axis) * (x[d] - partition.lo[d]) / width));
                if (cell >= per_axis) {
                    cell = per_axis - 1;
                }
            }
            index = index * per_axis + cell;
        }
        return index;
    };

    std::vector<std::uint64_t> marginal(bins, 0);
    std::vector<std::uint64_t> joint(bins * bins, 0);
    for (std::size_t k = skip; k <= skip + m; ++k) {
        const std::uint64_t i = locate(orbit.point(k));
        const std::uint64_t j = locate(orbit.point(k + 1));
        ++marginal[i];
        ++joint[i * bins + j];
    }

    const double total = double(m) + 1.0;
    double sum = 0.0, carry = 0.0;
    for (std::uint64_t i = 0; i < bins; ++i) {
        for (std::uint64_t j = 0; j < bins; ++j) {
            const std::uint64_t pair = joint[i * bins + j];
            if (pair == 0) {
                continue;
            }
            const double term =
                double(pair) / total * std::log(double(marginal[i]) / double(pair));
            const double y = term - carry;
            const double t = sum + y;
            carry = (t - sum) - y;
            sum = t;
        }
    }
    return sum;
}

std::vector<CheckResult> zero_degree_suite() {
    using namespace spin;

    const Matrix2c rho = density_matrix(Vec3{0.3, -0.4, 0.5});
    const Matrix2c obs = pauli_dot(Vec3{0.8, -0.5, 1.2});

    const Matrix2c u = rotation_unitary(1.1, UnitVector3::normalized(Vec3{0.2, -1.0, 0.4}).components());
    const Matrix2c projector_up{1.0, 0.0, 0.0, 0.0};
    const Matrix2c projector_down{0.0, 0.0, 0.0, 1.0};
    const Matrix2c dephased =
        projector_up * rho * projector_up + projector_down * rho * projector_down;

    struct Case {
        const char* name;
        double value;
    };
    const Case cases[] = {
        {"fixed unitary conjugation", expectation(obs, conjugate(u, rho))},
        {"identity channel", expectation(obs, rho)},
        {"constant target state", expectation(obs, density_matrix(Vec3{0.0, 0.6, -0.1}))},
        {"projective dephasing", expectation(obs, dephased)},
    };

    std::vector<CheckResult> results;
    for (const Case& c : cases) {
        const Orbit orbit(std::vector<double>(default_skip + default_window + 2, c.value));
        bool ok = true;
        std::string detail = format("constant value %.6g", c.value);
        for (std::uint32_t bins : {2u, 10u, 100u}) {
            const EcdReport report = ecd_of_sequence(orbit, default_skip, default_window, bins);
            if (report.degree != 0.0 || report.occupied_bins != 1) {
                ok = false;
                detail += format("; M=%.0f gave D=%.3e", double(bins), report.degree);
            }
        }
        results.push_back({std::string("zero degree: ") + c.name, ok, detail});
    }
    return results;
}

std::vector<CheckResult> rotation_oracle_checks(std::size_t tuples, std::uint64_t seed) {
    using namespace spin;

    std::mt19937_64 engine(seed);
    double worst_value = 0.0;
    double worst_length = 0.0;
    for (std::size_t t = 0; t < tuples; ++t) {
        const UnitVector3 e(random_unit(engine));
        const Vec3 a{uniform(engine, -2.0, 2.0), uniform(engine, -2.0, 2.0),
                     uniform(engine, -2.0, 2.0)};
        const SpinState rho(Vec3{uniform(engine, -0.57, 0.57), uniform(engine, -0.57, 0.57),
                                 uniform(engine, -0.57, 0.57)});
        const double omega_tau = uniform(engine, -6.3, 6.3);

        const double closed = observable_value(rho, SpinObservable{a}, e, omega_tau);
        const double traced = oracle_observable_value(rho, SpinObservable{a}, e, omega_tau);
        worst_value = std::max(worst_value, std::abs(closed - traced));

        const Vec3 rotated = rotation_apply(omega_tau, e, a);
        worst_length = std::max(worst_length, std::abs(norm(rotated) - norm(a)));
    }

    std::vector<CheckResult> results;
    results.push_back({"rotation vs 2x2 conjugation",
                       worst_value <= 1e-10,
                       format("max |closed - traced| = %.3e over %.0f tuples", worst_value,
                              double(tuples))});
    results.push_back({"rotation preserves length",
                       worst_length <= 1e-10,
                       format("max | |Ra| - |a| | = %.3e", worst_length)});
    return results;
}

std::vector<CheckResult> logistic_equivalence_checks(std::size_t theta_count,
                                                     std::size_t steps) {
    using namespace spin;

    bool residuals_ok = true;
    std::string residual_detail = "no violations";
    bool ecd_ok = true;
    double worst_ecd_gap = 0.0;

    const PartitionSpec shared = PartitionSpec::over({0.0}, {1.0}, 100);

    for (std::size_t k = 1; k <= theta_count; ++k) {
        const double theta = double(k) * std::numbers::pi / double(theta_count);
        SpinDynamicsConfig config;
        config.theta = theta;

        // per-step residuals over the requested horizon
        const std::vector<Vec3> field_short = field_orbit(config, steps + 2);
        std::vector<double> e3_short(field_short.size());
        for (std::size_t i = 0; i < field_short.size(); ++i) {
            e3_short[i] = field_short[i][2];
        }
        try {
            logistic_equivalence(e3_short, theta);
        } catch (const equivalence_error& err) {
            residuals_ok = false;
            residual_detail = format("theta=%.6f failed at step %.0f", theta, double(err.step()));
        }

        // chaos degrees of the mapped z orbit and its one-step logistic
        // image orbit under one shared partition
        const std::vector<Vec3> field_full =
            field_orbit(config, default_skip + default_window + 2);
        std::vector<double> e3_full(field_full.size());
        for (std::size_t i = 0; i < field_full.size(); ++i) {
            e3_full[i] = field_full[i][2];
        }
        std::vector<double> z;
        try {
            z = logistic_equivalence(e3_full, theta);
        } catch (const equivalence_error& err) {
            residuals_ok = false;
            residual_detail =
                format("theta=%.6f failed at step %.0f (full window)", theta, double(err.step()));
            continue;
        }
        const double sin_half = std::sin(0.5 * theta);
        const double mu = 4.0 * sin_half * sin_half;
        std::vector<double> shadow(z.size());
        shadow[0] = z[0];
        for (std::size_t i = 0; i + 1 < z.size(); ++i) {
            shadow[i + 1] = maps::logistic_step(z[i], mu);
        }
        const EcdReport direct =
            ecd_of_sequence(Orbit(std::move(z)), default_skip, default_window, shared);
        const EcdReport imaged =
            ecd_of_sequence(Orbit(std::move(shadow)), default_skip, default_window, shared);
        const double gap = std::abs(direct.degree - imaged.degree);
        worst_ecd_gap = std::max(worst_ecd_gap, gap);
        if (gap > 1e-12) {
            ecd_ok = false;
        }
    }

    std::vector<CheckResult> results;
    results.push_back({format("logistic equivalence residuals (%.0f angles)", double(theta_count)),
                       residuals_ok, residual_detail});
    results.push_back({"logistic equivalence chaos degrees", ecd_ok,
                       format("max |D_z - D_logistic| = %.3e", worst_ecd_gap)});
    return results;
}

namespace {

struct PairCase {
    std::string name;
    EmpiricalMarginal marginal;
    EmpiricalJoint joint;
    const Orbit* orbit; // null for Monte Carlo pairs (no dense cross-check)
    std::size_t skip = 0;
    std::size_t m = 0;
};

CheckResult check_pair(const PairCase& c) {
    bool ok = true;
    std::string detail;

    // integer marginal consistency: same summands, same counts
    if (c.joint.row_counts() != c.marginal.counts()) {
        ok = false;
        detail += "row sums differ from marginal; ";
    }

    const TransitionChannel channel = channel_from(c.joint, c.marginal);

    double worst_row = 0.0;
    for (const auto& [bin, row] : channel.rows()) {
        double sum = 0.0;
        for (const auto& [successor, prob] : row) {
            sum += prob;
        }
        worst_row = std::max(worst_row, std::abs(sum - 1.0));
    }
    if (worst_row > 1e-12) {
        ok = false;
        detail += format("row sum off by %.3e; ", worst_row);
    }

    // pushing the time-n distribution through the channel gives the time-n+1
    // distribution (the joint's column marginal)
    const auto pushed = channel.apply(c.marginal.probs());
    const auto columns = c.joint.column_counts();
    double worst_push = 0.0;
    for (const auto& [bin, count] : columns) {
        const auto it = pushed.find(bin);
        const double expected = double(count) / double(c.joint.total());
        const double got = it == pushed.end() ? 0.0 : it->second;
        worst_push = std::max(worst_push, std::abs(got - expected));
    }
    for (const auto& [bin, got] : pushed) {
        if (columns.find(bin) == columns.end()) {
            worst_push = std::max(worst_push, std::abs(got));
        }
    }
    if (worst_push > 1e-12) {
        ok = false;
        detail += format("channel push off by %.3e; ", worst_push);
    }

    const EcdReport report = chaos_degree(c.joint, c.marginal);
    if (!(report.degree >= 0.0)) {
        ok = false;
        detail += format("negative degree %.3e; ", report.degree);
    }
    if (report.degree > std::log(double(report.occupied_bins)) + 1e-12) {
        ok = false;
        detail += format("degree %.6f above log(occupied) %.6f; ", report.degree,
                         std::log(double(report.occupied_bins)));
    }

    // conditional-entropy form recomputed through the channel
    double entropy_form = 0.0, carry = 0.0;
    for (const auto& [bin, count] : c.marginal.counts()) {
        const double term =
            double(count) / double(c.marginal.total()) * channel.row_entropy(bin);
        const double y = term - carry;
        const double t = entropy_form + y;
        carry = (t - entropy_form) - y;
        entropy_form = t;
    }
    if (std::abs(entropy_form - report.degree) > 1e-12) {
        ok = false;
        detail += format("entropy form off by %.3e; ", entropy_form - report.degree);
    }

    if (c.orbit != nullptr) {
        const double dense = dense_chaos_degree(*c.orbit, c.skip, c.m, c.marginal.partition());
        if (std::abs(dense - report.degree) > 1e-12) {
            ok = false;
            detail += format("dense oracle off by %.3e; ", dense - report.degree);
        }
    }

    if (detail.empty()) {
        detail = format("D = %.6f, occupied = %.0f", report.degree, double(report.occupied_bins));
    }
    return {"invariants: " + c.name, ok, detail};
}

} // namespace

std::vector<CheckResult> structural_invariant_checks() {
    std::vector<CheckResult> results;

    struct OrbitCase {
        std::string name;
        Orbit orbit;
        std::size_t skip;
        std::size_t m;
        std::uint32_t bins;
    };
    std::vector<OrbitCase> cases;
    cases.push_back({"logistic mu=3.7, M=8",
                     maps::orbit({maps::MapFamily::logistic, {3.7}, {0.123}}, 251), 50, 199, 8});
    cases.push_back({"logistic mu=4.0, M=8",
                     maps::orbit({maps::MapFamily::logistic, {4.0}, {0.3}}, 251), 50, 199, 8});
    cases.push_back({"logistic mu=3.5699, M=5",
                     maps::orbit({maps::MapFamily::logistic, {3.5699}, {0.42}}, 251), 50, 199, 5});
    cases.push_back({"baker 2-D, M=4",
                     maps::orbit({maps::MapFamily::baker, {}, {0.1234, 0.7567}}, 172), 20, 150, 4});
    {
        spin::SpinDynamicsConfig config;
        config.theta = 3.0;
        cases.push_back({"spin example1 theta=3.0, M=100",
                         spin::spin_orbit(config, default_skip + default_window + 2),
                         default_skip, default_window, 100});
    }

    for (const OrbitCase& oc : cases) {
        const PartitionSpec partition =
            PartitionSpec::spanning(oc.orbit, oc.skip, oc.skip + oc.m + 1, oc.bins);
        PairCase pc{oc.name,
                    empirical_marginal(oc.orbit, oc.skip, oc.m, partition),
                    empirical_joint(oc.orbit, oc.skip, oc.m, partition),
                    &oc.orbit, oc.skip, oc.m};
        results.push_back(check_pair(pc));
    }

    // Monte Carlo pair over sampled initial points
    {
        const PartitionSpec partition = PartitionSpec::over({0.0}, {1.0}, 8);
        InitialPointSampler sampler(20240811ULL, {{{0.0, 1.0}}});
        const OrbitFactory factory = [](std::span<const double> x0) {
            return maps::orbit({maps::MapFamily::logistic, {3.9}, {x0[0]}}, 703);
        };
        const EmpiricalPair pair =
            empirical_pair_monte_carlo(factory, sampler, 8, 200, 500, partition);
        PairCase pc{"logistic mu=3.9 Monte Carlo (8 samples), M=8",
                    pair.marginal, pair.joint, nullptr, 200, 500};
        results.push_back(check_pair(pc));
    }

    return results;
}

std::vector<CheckResult> run_all() {
    std::vector<CheckResult> all;
    for (auto group : {zero_degree_suite(), rotation_oracle_checks(),
                       logistic_equivalence_checks(), structural_invariant_checks()}) {
        all.insert(all.end(), group.begin(), group.end());
    }
    return all;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& result : results) {
        if (!result.passed) {
            return false;
        }
    }
    return true;
}

} // namespace ecd::selfcheck
