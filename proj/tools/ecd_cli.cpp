// Command-line front end: single evaluations, parameter sweeps with CSV/SVG
// output, and a self-test battery.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime/numeric error,
// 3 selftest failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ecd/selfcheck.hpp"
#include "ecd/sweep.hpp"

namespace {

using ecd::sweep::SweepConfig;
using ecd::sweep::SweepTarget;

struct GridFlag {
    bool set = false;
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;
    bool inclusive = false;
    bool inclusive_set = false;
};

GridFlag parse_grid_flag(const std::string& text) {
    GridFlag grid;
    std::vector<std::string> parts;
    std::string token;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(token);
            token.clear();
        } else {
            token += c;
        }
    }
    parts.push_back(token);
    if (parts.size() < 3 || parts.size() > 4) {
        throw ecd::sweep::config_error("--grid expects start:stop:count[:inc|exc]");
    }
    try {
        grid.start = std::stod(parts[0]);
        grid.stop = std::stod(parts[1]);
        grid.count = std::stoul(parts[2]);
    } catch (const std::exception&) {
        throw ecd::sweep::config_error("--grid expects numeric start:stop:count");
    }
    if (parts.size() == 4) {
        if (parts[3] == "inc") {
            grid.inclusive = true;
        } else if (parts[3] == "exc") {
            grid.inclusive = false;
        } else {
            throw ecd::sweep::config_error("--grid endpoint mode must be inc or exc");
        }
        grid.inclusive_set = true;
    }
    grid.set = true;
    return grid;
}

std::vector<double> parse_csv_doubles(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (!token.empty()) {
                try {
                    out.push_back(std::stod(token));
                } catch (const std::exception&) {
                    throw ecd::sweep::config_error(std::string(flag) + ": invalid number '" +
                                                   token + "'");
                }
                token.clear();
            }
        } else {
            token += c;
        }
    }
    if (out.empty()) {
        throw ecd::sweep::config_error(std::string(flag) + ": empty list");
    }
    return out;
}

// Options shared by the classical, spin and sweep subcommands; each stores
// the raw flag text so file values can be overridden only when a flag was
// actually passed.
struct CommonOptions {
    CLI::Option* param = nullptr;
    CLI::Option* grid = nullptr;
    CLI::Option* skip = nullptr;
    CLI::Option* window = nullptr;
    CLI::Option* bins = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* samples = nullptr;
    CLI::Option* workers = nullptr;
    CLI::Option* csv = nullptr;
    CLI::Option* svg = nullptr;

    std::string param_value;
    std::string grid_value;
    std::size_t skip_value = 0;
    std::size_t window_value = 0;
    std::string bins_value;
    std::uint64_t seed_value = 0;
    std::size_t samples_value = 1;
    std::size_t workers_value = 0;
    std::string csv_value;
    std::string svg_value;

    void attach(CLI::App* app) {
        param = app->add_option("--param", param_value, "swept parameter name");
        grid = app->add_option("--grid", grid_value, "parameter grid start:stop:count[:inc|exc]");
        skip = app->add_option("--skip", skip_value, "transient iterates to discard");
        window = app->add_option("--window", window_value, "window length minus one (m)");
        bins = app->add_option("--bins", bins_value, "bins per axis, M or comma list M1,M2,...");
        seed = app->add_option("--seed", seed_value, "Monte Carlo seed");
        samples = app->add_option("--samples", samples_value,
                                  "initial points to average over (logistic only)");
        workers = app->add_option("--workers", workers_value,
                                  "concurrent grid-point evaluations (0 = hardware)");
        csv = app->add_option("--csv", csv_value, "write sweep rows to this CSV file");
        svg = app->add_option("--svg", svg_value, "write a chart to this SVG file");
    }

    void apply(SweepConfig& config) const {
        if (param->count() > 0) config.parameter = param_value;
        if (grid->count() > 0) {
            const GridFlag g = parse_grid_flag(grid_value);
            config.grid.start = g.start;
            config.grid.stop = g.stop;
            config.grid.count = g.count;
            if (g.inclusive_set) {
                config.grid.inclusive = g.inclusive;
            }
        }
        if (skip->count() > 0) config.skip = skip_value;
        if (window->count() > 0) config.window_m = window_value;
        if (bins->count() > 0) {
            config.bin_counts.clear();
            for (double b : parse_csv_doubles(bins_value, "--bins")) {
                config.bin_counts.push_back(std::uint32_t(b));
            }
        }
        if (seed->count() > 0) config.seed = seed_value;
        if (samples->count() > 0) config.samples = samples_value;
        if (workers->count() > 0) config.workers = workers_value;
        if (csv->count() > 0) config.csv_path = csv_value;
        if (svg->count() > 0) config.svg_path = svg_value;
    }
};

void print_single(const SweepConfig& config, const ecd::sweep::SweepRow& row, bool bits) {
    const double value = bits ? row.degree / std::numbers::ln2 : row.degree;
    std::printf("target=%s %s=%.12g\n", ecd::sweep::target_name(config.target).c_str(),
                config.parameter.c_str(), row.param);
    std::printf("D = %.12g %s\n", value, bits ? "bits" : "nats");
    std::printf("occupied_bins = %llu   M = %u   skip = %zu   window = %zu\n",
                static_cast<unsigned long long>(row.occupied_bins), row.bins, row.skip,
                row.window_m);
}

int run_configured(SweepConfig config, bool bits) {
    ecd::sweep::validate(config);
    const ecd::sweep::SweepResult result = ecd::sweep::run_sweep(config);

    if (!config.csv_path.empty()) {
        ecd::sweep::emit_csv(result, std::filesystem::path(config.csv_path));
        std::printf("wrote %zu row(s) to %s\n", result.rows.size(), config.csv_path.c_str());
    }
    if (!config.svg_path.empty()) {
        ecd::sweep::emit_svg(result, std::filesystem::path(config.svg_path));
        std::printf("wrote chart to %s\n", config.svg_path.c_str());
    }

    if (result.rows.size() == 1) {
        print_single(config, result.rows.front(), bits);
    } else if (config.csv_path.empty()) {
        ecd::sweep::emit_csv(result, std::cout);
    }
    return 0;
}

int run_selftest() {
    const auto results = ecd::selfcheck::run_all();
    std::size_t failed = 0;
    for (const auto& result : results) {
        std::printf("%-52s %s\n", result.name.c_str(), result.passed ? "ok" : "FAIL");
        if (!result.passed) {
            std::printf("    %s\n", result.detail.c_str());
            ++failed;
        }
    }
    std::printf("%zu/%zu checks passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropic chaos degree toolkit"};
    app.require_subcommand(1);

    bool bits = false;

    // classical
    CLI::App* classical = app.add_subcommand("classical", "chaos degree of a classical map orbit");
    classical->add_flag("--bits", bits, "print the degree in bits instead of nats");
    std::string map_name = "logistic";
    double mu = 4.0;
    std::string x0_text;
    classical->add_option("--map", map_name, "logistic | baker | tinkerbell");
    classical->add_option("--mu", mu, "logistic parameter for single runs");
    CLI::Option* x0_opt = classical->add_option("--x0", x0_text, "initial point, comma separated");
    CommonOptions classical_common;
    classical_common.attach(classical);

    // spin
    CLI::App* spin_cmd = app.add_subcommand("spin", "chaos degree of the spin-1/2 recurrences");
    spin_cmd->add_flag("--bits", bits, "print the degree in bits instead of nats");
    int example = 1;
    double theta = std::numbers::pi / 2;
    double omega_tau = ecd::spin::default_omega_tau;
    std::string e0_text, a_text, rho_text, observable = "reduced";
    spin_cmd->add_option("--example", example, "field recurrence, 1 or 2")
        ->check(CLI::Range(1, 2));
    spin_cmd->add_option("--theta", theta, "angle for single runs");
    CLI::Option* omega_opt = spin_cmd->add_option("--omega-tau", omega_tau, "rotation angle");
    CLI::Option* e0_opt = spin_cmd->add_option("--e0", e0_text, "initial field direction x,y,z");
    CLI::Option* a_opt = spin_cmd->add_option("--a", a_text, "observable vector x,y,z");
    CLI::Option* rho_opt = spin_cmd->add_option("--rho", rho_text, "Bloch vector x,y,z");
    CLI::Option* observable_opt =
        spin_cmd->add_option("--observable", observable, "full | reduced");
    CommonOptions spin_common;
    spin_common.attach(spin_cmd);

    // sweep
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "config-driven parameter sweep");
    sweep_cmd->add_flag("--bits", bits, "print the degree in bits instead of nats");
    std::string config_path;
    sweep_cmd->add_option("--config", config_path, "sweep configuration file")->required();
    std::string target_text;
    std::string sweep_observable;
    double sweep_omega_tau = 0.0;
    std::string sweep_e0, sweep_a, sweep_rho, sweep_x0;
    CLI::Option* target_opt = sweep_cmd->add_option("--target", target_text, "override target");
    CLI::Option* sweep_observable_opt =
        sweep_cmd->add_option("--observable", sweep_observable, "full | reduced");
    CLI::Option* sweep_omega_opt =
        sweep_cmd->add_option("--omega-tau", sweep_omega_tau, "rotation angle");
    CLI::Option* sweep_e0_opt = sweep_cmd->add_option("--e0", sweep_e0, "initial field x,y,z");
    CLI::Option* sweep_a_opt = sweep_cmd->add_option("--a", sweep_a, "observable vector x,y,z");
    CLI::Option* sweep_rho_opt = sweep_cmd->add_option("--rho", sweep_rho, "Bloch vector x,y,z");
    CLI::Option* sweep_x0_opt = sweep_cmd->add_option("--x0", sweep_x0, "classical initial point");
    CommonOptions sweep_common;
    sweep_common.attach(sweep_cmd);

    // selftest
    app.add_subcommand("selftest", "run the stability suite and oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("selftest")) {
            return run_selftest();
        }

        if (app.got_subcommand("classical")) {
            SweepConfig config;
            config.target = ecd::sweep::parse_target(map_name);
            switch (config.target) {
            case SweepTarget::logistic:
                config.parameter = "mu";
                config.grid = {0.0, 4.0, 64, false};
                config.x0 = {0.3};
                break;
            case SweepTarget::baker:
                config.parameter = "none";
                config.grid = {0.0, 0.0, 1, false};
                config.x0 = {0.3, 0.7};
                break;
            case SweepTarget::tinkerbell:
                config.parameter = "a";
                config.grid = {ecd::maps::tinkerbell_default_params[0],
                               ecd::maps::tinkerbell_default_params[0], 1, false};
                config.x0 = {-0.72, -0.64};
                break;
            default:
                break;
            }
            if (config.target == SweepTarget::logistic && classical_common.grid->count() == 0 &&
                classical_common.param->count() == 0) {
                // no sweep requested: single evaluation at --mu
                config.grid = {mu, mu, 1, false};
            }
            if (x0_opt->count() > 0) {
                config.x0 = parse_csv_doubles(x0_text, "--x0");
            }
            classical_common.apply(config);
            return run_configured(std::move(config), bits);
        }

        if (app.got_subcommand("spin")) {
            SweepConfig config;
            config.target = example == 1 ? SweepTarget::example1 : SweepTarget::example2;
            config.parameter = "theta";
            config.grid = {0.0, std::numbers::pi, 64, false};
            if (config.target == SweepTarget::example2) {
                config.parameter = "a";
                config.grid = {0.0, 4.0, 64, false};
            }
            if (spin_common.grid->count() == 0 && spin_common.param->count() == 0) {
                config.parameter = "theta";
                config.grid = {theta, theta, 1, false};
            }
            if (omega_opt->count() > 0) config.omega_tau = omega_tau;
            if (e0_opt->count() > 0) {
                const auto v = parse_csv_doubles(e0_text, "--e0");
                if (v.size() != 3) throw ecd::sweep::config_error("--e0 needs three components");
                config.e0 = {v[0], v[1], v[2]};
            }
            if (a_opt->count() > 0) {
                const auto v = parse_csv_doubles(a_text, "--a");
                if (v.size() != 3) throw ecd::sweep::config_error("--a needs three components");
                config.a = {v[0], v[1], v[2]};
            }
            if (rho_opt->count() > 0) {
                const auto v = parse_csv_doubles(rho_text, "--rho");
                if (v.size() != 3) throw ecd::sweep::config_error("--rho needs three components");
                config.rho = {v[0], v[1], v[2]};
            }
            if (observable_opt->count() > 0) {
                if (observable == "full") config.observable_mode = ecd::spin::ObservableMode::full;
                else if (observable == "reduced")
                    config.observable_mode = ecd::spin::ObservableMode::reduced;
                else throw ecd::sweep::config_error("--observable must be full or reduced");
            }
            spin_common.apply(config);
            return run_configured(std::move(config), bits);
        }

        // sweep: file first, then flag overrides
        SweepConfig config = ecd::sweep::load_config(config_path);
        if (target_opt->count() > 0) config.target = ecd::sweep::parse_target(target_text);
        if (sweep_observable_opt->count() > 0) {
            if (sweep_observable == "full")
                config.observable_mode = ecd::spin::ObservableMode::full;
            else if (sweep_observable == "reduced")
                config.observable_mode = ecd::spin::ObservableMode::reduced;
            else throw ecd::sweep::config_error("--observable must be full or reduced");
        }
        if (sweep_omega_opt->count() > 0) config.omega_tau = sweep_omega_tau;
        if (sweep_e0_opt->count() > 0) {
            const auto v = parse_csv_doubles(sweep_e0, "--e0");
            if (v.size() != 3) throw ecd::sweep::config_error("--e0 needs three components");
            config.e0 = {v[0], v[1], v[2]};
        }
        if (sweep_a_opt->count() > 0) {
            const auto v = parse_csv_doubles(sweep_a, "--a");
            if (v.size() != 3) throw ecd::sweep::config_error("--a needs three components");
            config.a = {v[0], v[1], v[2]};
        }
        if (sweep_rho_opt->count() > 0) {
            const auto v = parse_csv_doubles(sweep_rho, "--rho");
            if (v.size() != 3) throw ecd::sweep::config_error("--rho needs three components");
            config.rho = {v[0], v[1], v[2]};
        }
        if (sweep_x0_opt->count() > 0) config.x0 = parse_csv_doubles(sweep_x0, "--x0");
        sweep_common.apply(config);
        return run_configured(std::move(config), bits);
    } catch (const ecd::sweep::config_error& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
