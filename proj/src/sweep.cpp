#include "ecd/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace ecd::sweep {

namespace {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

SweepTarget parse_target(const std::string& name) {
    if (name == "logistic") return SweepTarget::logistic;
    if (name == "baker") return SweepTarget::baker;
    if (name == "tinkerbell") return SweepTarget::tinkerbell;
    if (name == "example1") return SweepTarget::example1;
    if (name == "example2") return SweepTarget::example2;
    throw config_error("unknown target '" + name + "'");
}

std::string target_name(SweepTarget target) {
    switch (target) {
    case SweepTarget::logistic: return "logistic";
    case SweepTarget::baker: return "baker";
    case SweepTarget::tinkerbell: return "tinkerbell";
    case SweepTarget::example1: return "example1";
    case SweepTarget::example2: return "example2";
    }
    return "?";
}

std::vector<double> GridSpec::points() const {
    if (count == 0) {
        throw config_error("grid count must be at least 1");
    }
    if (!(start <= stop) || !std::isfinite(start) || !std::isfinite(stop)) {
        throw config_error("grid requires finite start <= stop");
    }
    std::vector<double> values(count);
    if (count == 1) {
        values[0] = start;
        return values;
    }
    const double step = (stop - start) / double(inclusive ? count - 1 : count);
    for (std::size_t k = 0; k < count; ++k) {
        values[k] = start + double(k) * step;
    }
    return values;
}

namespace {

bool is_spin(SweepTarget target) {
    return target == SweepTarget::example1 || target == SweepTarget::example2;
}

std::vector<std::string> allowed_parameters(SweepTarget target) {
    switch (target) {
    case SweepTarget::logistic: return {"mu"};
    case SweepTarget::baker: return {"none"};
    case SweepTarget::tinkerbell: return {"a", "b", "c", "d"};
    case SweepTarget::example1: return {"theta"};
    case SweepTarget::example2: return {"theta", "a"};
    }
    return {};
}

} // namespace

void validate(const SweepConfig& config) {
    config.grid.points(); // shape checks

    const auto allowed = allowed_parameters(config.target);
    if (std::find(allowed.begin(), allowed.end(), config.parameter) == allowed.end()) {
        std::string names;
        for (const auto& name : allowed) {
            names += names.empty() ? name : ", " + name;
        }
        throw config_error("parameter '" + config.parameter + "' not sweepable for target " +
                           target_name(config.target) + " (allowed: " + names + ")");
    }
    if (config.target == SweepTarget::baker && config.grid.count > 1) {
        throw config_error("baker has no sweepable parameter; use a single-point grid");
    }
    if (config.window_m < 1) {
        throw config_error("window must be at least 1");
    }
    if (config.bin_counts.empty()) {
        throw config_error("at least one bin count required");
    }
    for (std::uint32_t bins : config.bin_counts) {
        if (bins == 0) {
            throw config_error("bin counts must be positive");
        }
    }
    if (config.samples < 1) {
        throw config_error("samples must be at least 1");
    }
    if (config.samples > 1 && config.target != SweepTarget::logistic) {
        throw config_error("Monte Carlo sampling (samples > 1) is supported for the logistic "
                           "target only");
    }
    const std::size_t expected_x0 = config.target == SweepTarget::logistic ? 1 : 2;
    if (!is_spin(config.target) && config.x0.size() != expected_x0) {
        throw config_error("x0 must have " + std::to_string(expected_x0) +
                           " component(s) for target " + target_name(config.target));
    }
    if (is_spin(config.target)) {
        try {
            spin::UnitVector3::normalized(config.e0);
            spin::SpinState state(config.rho);
        } catch (const std::exception& e) {
            throw config_error(std::string("invalid spin settings: ") + e.what());
        }
        if (!std::isfinite(config.omega_tau)) {
            throw config_error("omega_tau must be finite");
        }
    }
}

EcdReport evaluate_point(const SweepConfig& config, std::size_t index, double value) {
    const std::size_t length = config.skip + config.window_m + 2;

    if (is_spin(config.target)) {
        spin::SpinDynamicsConfig dynamics;
        dynamics.example = config.target == SweepTarget::example1 ? spin::SpinExample::example1
                                                                  : spin::SpinExample::example2;
        dynamics.omega_tau = config.omega_tau;
        dynamics.e0 = spin::UnitVector3::normalized(config.e0);
        dynamics.a = spin::SpinObservable{config.a};
        dynamics.rho = spin::SpinState(config.rho);
        dynamics.observable_mode = config.observable_mode;
        if (config.parameter == "theta") {
            dynamics.theta = value;
        } else { // coupling a = 2(1 - cos theta) in [0, 4]
            if (!(value >= 0.0 && value <= 4.0)) {
                throw std::out_of_range("coupling a = " + std::to_string(value) +
                                        " outside [0, 4]");
            }
            dynamics.theta = std::acos(1.0 - value / 2.0);
        }
        const Orbit orbit = spin::spin_orbit(dynamics, length);
        return ecd_sup_over_partitions(orbit, config.skip, config.window_m, config.bin_counts);
    }

    maps::MapSpec spec;
    spec.x0 = config.x0;
    switch (config.target) {
    case SweepTarget::logistic:
        spec.family = maps::MapFamily::logistic;
        spec.params = {value};
        break;
    case SweepTarget::baker:
        spec.family = maps::MapFamily::baker;
        break;
    case SweepTarget::tinkerbell: {
        spec.family = maps::MapFamily::tinkerbell;
        auto params = config.tinkerbell_params;
        params[std::size_t(config.parameter[0] - 'a')] = value;
        spec.params.assign(params.begin(), params.end());
        break;
    }
    default:
        break;
    }

    if (config.samples > 1) {
        // per-point deterministic seed so grid points stay independent of
        // evaluation order
        const std::uint64_t point_seed =
            config.seed + 0x9E3779B97F4A7C15ULL * (std::uint64_t(index) + 1);
        const OrbitFactory factory = [&spec, length](std::span<const double> x0) {
            maps::MapSpec sampled = spec;
            sampled.x0 = {x0[0]};
            return maps::orbit(sampled, length);
        };
        EcdReport best;
        bool first = true;
        for (std::uint32_t bins : config.bin_counts) {
            InitialPointSampler sampler(point_seed, {{{0.0, 1.0}}});
            EcdReport candidate = ecd_monte_carlo(factory, sampler, config.samples, config.skip,
                                                  config.window_m, bins);
            if (first || candidate.degree > best.degree) {
                best = std::move(candidate);
                first = false;
            }
        }
        return best;
    }

    const Orbit orbit = maps::orbit(spec, length);
    return ecd_sup_over_partitions(orbit, config.skip, config.window_m, config.bin_counts);
}

SweepResult run_sweep(const SweepConfig& config) {
    validate(config);
    const std::vector<double> points = config.grid.points();

    SweepResult result;
    result.parameter = config.parameter;
    result.rows.resize(points.size());

    const auto make_row = [&](std::size_t i) {
        const EcdReport report = evaluate_point(config, i, points[i]);
        result.rows[i] = SweepRow{points[i], report.degree, report.occupied_bins,
                                  report.partition.bins_per_axis, report.window.skip,
                                  report.window.m};
    };

    const auto abort_with = [&](double param, const std::exception& cause) {
        throw std::runtime_error("sweep aborted at " + config.parameter + " = " + fmt12(param) +
                                 ": " + cause.what());
    };

    std::size_t workers = config.workers != 0
                              ? config.workers
                              : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, points.size());

    if (workers <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            try {
                make_row(i);
            } catch (const std::exception& e) {
                abort_with(points[i], e);
            }
        }
        return result;
    }

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> stop{false};
    std::mutex error_mutex;
    std::exception_ptr error;
    double error_param = 0.0;

    const auto body = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= points.size() || stop.load(std::memory_order_relaxed)) {
                return;
            }
            try {
                make_row(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                    error_param = points[i];
                }
                stop.store(true, std::memory_order_relaxed);
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        pool.emplace_back(body);
    }
    body();
    for (std::thread& t : pool) {
        t.join();
    }

    if (error) {
        try {
            std::rethrow_exception(error);
        } catch (const std::exception& e) {
            abort_with(error_param, e);
        }
    }
    return result;
}

void emit_csv(const SweepResult& result, std::ostream& out) {
    out << "param,D,occupied_bins,M,skip,window\n";
    for (const SweepRow& row : result.rows) {
        out << fmt12(row.param) << ',' << fmt12(row.degree) << ',' << row.occupied_bins << ','
            << row.bins << ',' << row.skip << ',' << row.window_m << '\n';
    }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("emit_csv: cannot open " + path.string());
    }
    emit_csv(result, out);
    out.flush();
    if (!out) {
        throw std::runtime_error("emit_csv: write failed for " + path.string());
    }
}

namespace {

struct ChartLayout {
    static constexpr double width = 880.0;
    static constexpr double height = 560.0;
    static constexpr double margin_left = 80.0;
    static constexpr double margin_right = 24.0;
    static constexpr double margin_top = 24.0;
    static constexpr double margin_bottom = 56.0;

    static constexpr double plot_left() { return margin_left; }
    static constexpr double plot_right() { return width - margin_right; }
    static constexpr double plot_top() { return margin_top; }
    static constexpr double plot_bottom() { return height - margin_bottom; }
};

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
};

AxisRange padded_range(double lo, double hi) {
    if (lo == hi) {
        // degenerate data span; anchor zero-valued data to the axis
        if (lo == 0.0) {
            return {0.0, 1.0};
        }
        const double pad = std::abs(lo) * 0.05;
        return {lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * 0.05;
    return {lo - pad, hi + pad};
}

} // namespace

void emit_svg(const SweepResult& result, std::ostream& out) {
    using L = ChartLayout;
    if (result.rows.empty()) {
        throw std::invalid_argument("emit_svg: empty sweep result");
    }

    double xlo = result.rows.front().param, xhi = xlo;
    double ylo = result.rows.front().degree, yhi = ylo;
    for (const SweepRow& row : result.rows) {
        xlo = std::min(xlo, row.param);
        xhi = std::max(xhi, row.param);
        ylo = std::min(ylo, row.degree);
        yhi = std::max(yhi, row.degree);
    }
    const AxisRange xr = padded_range(xlo, xhi);
    const AxisRange yr = padded_range(ylo, yhi);

    const auto x_of = [&](double v) {
        return L::plot_left() + (v - xr.lo) / (xr.hi - xr.lo) * (L::plot_right() - L::plot_left());
    };
    const auto y_of = [&](double v) {
        return L::plot_bottom() - (v - yr.lo) / (yr.hi - yr.lo) * (L::plot_bottom() - L::plot_top());
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << L::width << "\" height=\""
        << L::height << "\" viewBox=\"0 0 " << L::width << ' ' << L::height << "\">\n"
        << "  <rect width=\"" << L::width << "\" height=\"" << L::height
        << "\" fill=\"white\"/>\n";

    // axes
    out << "  <line x1=\"" << L::plot_left() << "\" y1=\"" << L::plot_bottom() << "\" x2=\""
        << L::plot_right() << "\" y2=\"" << L::plot_bottom()
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << L::plot_left() << "\" y1=\"" << L::plot_top() << "\" x2=\""
        << L::plot_left() << "\" y2=\"" << L::plot_bottom()
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // ticks and labels
    constexpr int tick_count = 5;
    for (int t = 0; t <= tick_count; ++t) {
        const double fx = xr.lo + (xr.hi - xr.lo) * double(t) / tick_count;
        const double px = x_of(fx);
        out << "  <line x1=\"" << fmt6(px) << "\" y1=\"" << L::plot_bottom() << "\" x2=\""
            << fmt6(px) << "\" y2=\"" << L::plot_bottom() + 5 << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << fmt6(px) << "\" y=\"" << L::plot_bottom() + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt6(fx) << "</text>\n";

        const double fy = yr.lo + (yr.hi - yr.lo) * double(t) / tick_count;
        const double py = y_of(fy);
        out << "  <line x1=\"" << L::plot_left() - 5 << "\" y1=\"" << fmt6(py) << "\" x2=\""
            << L::plot_left() << "\" y2=\"" << fmt6(py) << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << L::plot_left() - 8 << "\" y=\"" << fmt6(py + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << fmt6(fy) << "</text>\n";
    }

    out << "  <text x=\"" << (L::plot_left() + L::plot_right()) / 2 << "\" y=\""
        << L::height - 12 << "\" font-size=\"14\" text-anchor=\"middle\">" << result.parameter
        << "</text>\n";
    out << "  <text x=\"18\" y=\"" << (L::plot_top() + L::plot_bottom()) / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << (L::plot_top() + L::plot_bottom()) / 2 << ")\">D (nats)</text>\n";

    if (result.rows.size() == 1) {
        out << "  <circle cx=\"" << fmt6(x_of(result.rows.front().param)) << "\" cy=\""
            << fmt6(y_of(result.rows.front().degree))
            << "\" r=\"4\" fill=\"steelblue\"/>\n";
    } else {
        out << "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < result.rows.size(); ++i) {
            if (i != 0) {
                out << ' ';
            }
            out << fmt6(x_of(result.rows[i].param)) << ',' << fmt6(y_of(result.rows[i].degree));
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

void emit_svg(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("emit_svg: cannot open " + path.string());
    }
    emit_svg(result, out);
    out.flush();
    if (!out) {
        throw std::runtime_error("emit_svg: write failed for " + path.string());
    }
}

namespace {

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

double parse_double(const std::string& value, const std::string& key) {
    const std::string v = trim(value);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw config_error("invalid number '" + value + "' for key " + key);
    }
    return out;
}

std::uint64_t parse_unsigned(const std::string& value, const std::string& key) {
    const std::string v = trim(value);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw config_error("invalid unsigned integer '" + value + "' for key " + key);
    }
    return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
    const std::string v = trim(value);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("invalid boolean '" + value + "' for key " + key);
}

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(item, key));
    }
    if (out.empty()) {
        throw config_error("empty list for key " + key);
    }
    return out;
}

spin::Vec3 parse_vec3(const std::string& value, const std::string& key) {
    const std::vector<double> items = parse_double_list(value, key);
    if (items.size() != 3) {
        throw config_error("key " + key + " needs exactly three components");
    }
    return {items[0], items[1], items[2]};
}

} // namespace

SweepConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot open config file " + path.string());
    }

    SweepConfig config;
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line == "[grid]") {
                section = "grid";
                continue;
            }
            throw config_error(where + ": unknown section " + line);
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error(where + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw config_error(where + ": empty key or value");
        }

        if (section == "grid") {
            if (key == "start") config.grid.start = parse_double(value, key);
            else if (key == "stop") config.grid.stop = parse_double(value, key);
            else if (key == "count") config.grid.count = parse_unsigned(value, key);
            else if (key == "inclusive") config.grid.inclusive = parse_bool(value, key);
            else throw config_error(where + ": unknown grid key " + key);
            continue;
        }

        if (key == "target") config.target = parse_target(value);
        else if (key == "param") config.parameter = value;
        else if (key == "skip") config.skip = parse_unsigned(value, key);
        else if (key == "window") config.window_m = parse_unsigned(value, key);
        else if (key == "bins") {
            config.bin_counts.clear();
            for (double b : parse_double_list(value, key)) {
                if (b < 1.0 || b != std::floor(b)) {
                    throw config_error(where + ": bins must be positive integers");
                }
                config.bin_counts.push_back(std::uint32_t(b));
            }
        }
        else if (key == "seed") config.seed = parse_unsigned(value, key);
        else if (key == "samples") config.samples = parse_unsigned(value, key);
        else if (key == "workers") config.workers = parse_unsigned(value, key);
        else if (key == "omega_tau") config.omega_tau = parse_double(value, key);
        else if (key == "observable") {
            if (value == "full") config.observable_mode = spin::ObservableMode::full;
            else if (value == "reduced") config.observable_mode = spin::ObservableMode::reduced;
            else throw config_error(where + ": observable must be full or reduced");
        }
        else if (key == "e0") config.e0 = parse_vec3(value, key);
        else if (key == "a") config.a = parse_vec3(value, key);
        else if (key == "rho") config.rho = parse_vec3(value, key);
        else if (key == "x0") config.x0 = parse_double_list(value, key);
        else if (key == "tinkerbell_params") {
            const auto items = parse_double_list(value, key);
            if (items.size() != 4) {
                throw config_error(where + ": tinkerbell_params needs four values");
            }
            std::copy(items.begin(), items.end(), config.tinkerbell_params.begin());
        }
        else if (key == "csv") config.csv_path = value;
        else if (key == "svg") config.svg_path = value;
        else throw config_error(where + ": unknown key " + key);
    }
    return config;
}

} // namespace ecd::sweep
