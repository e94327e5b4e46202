#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecd/chaos_degree.hpp"
#include "ecd/classical_maps.hpp"
#include "ecd/spin.hpp"

namespace ecd::sweep {

// Invalid run configuration (bad file, unknown key, incompatible settings).
// The CLI maps this to its configuration exit code.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SweepTarget { logistic, baker, tinkerbell, example1, example2 };

SweepTarget parse_target(const std::string& name);
std::string target_name(SweepTarget target);

// Evenly spaced parameter values. Half-open grids ([start, stop), the
// default) divide the span into `count` steps; inclusive grids place both
// endpoints. count == 1 yields just {start}.
struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    std::size_t count = 1;
    bool inclusive = false;

    std::vector<double> points() const;
};

// One sweep: a target family, the swept parameter, fixed settings for
// everything else, and the chaos-degree evaluation settings.
//
// Swept parameters per target: logistic "mu"; tinkerbell "a".."d";
// example1 "theta"; example2 "theta" or "a" (coupling, theta derived);
// baker has none ("none", single-point grids only).
struct SweepConfig {
    SweepTarget target = SweepTarget::example1;
    std::string parameter = "theta";
    GridSpec grid{0.0, std::numbers::pi, 64, false};

    std::vector<double> x0 = {0.3};
    std::array<double, 4> tinkerbell_params = maps::tinkerbell_default_params;
    spin::Vec3 e0 = spin::default_initial_direction().components();
    spin::Vec3 a{0.0, 0.0, 1.0};
    spin::Vec3 rho{0.0, 0.0, 1.0};
    double omega_tau = spin::default_omega_tau;
    spin::ObservableMode observable_mode = spin::ObservableMode::reduced;

    std::size_t skip = 10'000;
    std::size_t window_m = 100'000;
    std::vector<std::uint32_t> bin_counts = {100};

    std::uint64_t seed = 0;
    std::size_t samples = 1;

    std::size_t workers = 0; // 0 = available parallelism

    std::string csv_path;
    std::string svg_path;
};

struct SweepRow {
    double param = 0.0;
    double degree = 0.0;
    std::uint64_t occupied_bins = 0;
    std::uint32_t bins = 0;
    std::size_t skip = 0;
    std::size_t window_m = 0;
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepRow> rows;
};

// Throws config_error on an inconsistent configuration.
void validate(const SweepConfig& config);

// One grid-point evaluation; index feeds the per-point Monte Carlo seed.
EcdReport evaluate_point(const SweepConfig& config, std::size_t index, double value);

// Evaluates every grid point, concurrently up to the worker count; rows come
// back ordered by parameter regardless of completion order. Any point
// failure aborts the sweep with the offending parameter value and cause.
SweepResult run_sweep(const SweepConfig& config);

// CSV with header `param,D,occupied_bins,M,skip,window`; floating values at
// 12 significant digits, final line newline-terminated.
void emit_csv(const SweepResult& result, std::ostream& out);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

// Standalone SVG chart of (parameter, D): one polyline (a marker for
// single-point sweeps), labeled axes, ranges padded 5% around the data.
void emit_svg(const SweepResult& result, std::ostream& out);
void emit_svg(const SweepResult& result, const std::filesystem::path& path);

// Flat key = value file with one [grid] block; see README for the keys.
SweepConfig load_config(const std::filesystem::path& path);

} // namespace ecd::sweep
