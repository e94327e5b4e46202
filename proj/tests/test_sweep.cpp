#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ecd/sweep.hpp"

using namespace ecd;
using namespace ecd::sweep;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

SweepConfig small_logistic_sweep() {
    SweepConfig config;
    config.target = SweepTarget::logistic;
    config.parameter = "mu";
    config.grid = {3.5, 4.0, 8, true};
    config.skip = 500;
    config.window_m = 4'000;
    return config;
}

std::size_t count_polyline_vertices(const std::string& svg) {
    const auto start = svg.find("points=\"");
    REQUIRE(start != std::string::npos);
    const auto end = svg.find('"', start + 8);
    const std::string points = svg.substr(start + 8, end - start - 8);
    return std::count(points.begin(), points.end(), ',');
}

} // namespace

TEST_CASE("grid points: inclusive, half-open, single") {
    const GridSpec inclusive{0.0, 1.0, 5, true};
    CHECK(inclusive.points() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});

    const GridSpec half_open{0.0, 1.0, 4, false};
    CHECK(half_open.points() == std::vector<double>{0.0, 0.25, 0.5, 0.75});

    const GridSpec single{2.5, 9.0, 1, false};
    CHECK(single.points() == std::vector<double>{2.5});

    CHECK_THROWS_AS((GridSpec{1.0, 0.0, 4, false}.points()), config_error);
    CHECK_THROWS_AS((GridSpec{0.0, 1.0, 0, false}.points()), config_error);
}

TEST_CASE("config validation rejects incompatible settings") {
    SweepConfig config = small_logistic_sweep();
    CHECK_NOTHROW(validate(config));

    config.parameter = "theta";
    CHECK_THROWS_AS(validate(config), config_error);

    config = small_logistic_sweep();
    config.window_m = 0;
    CHECK_THROWS_AS(validate(config), config_error);

    config = small_logistic_sweep();
    config.bin_counts = {};
    CHECK_THROWS_AS(validate(config), config_error);

    config = small_logistic_sweep();
    config.target = SweepTarget::baker;
    config.parameter = "none";
    config.x0 = {0.3, 0.7};
    CHECK_THROWS_AS(validate(config), config_error); // multi-point grid for baker

    config.grid.count = 1;
    CHECK_NOTHROW(validate(config));

    config = small_logistic_sweep();
    config.samples = 4;
    CHECK_NOTHROW(validate(config));
    config.target = SweepTarget::tinkerbell;
    config.parameter = "a";
    config.x0 = {-0.72, -0.64};
    CHECK_THROWS_AS(validate(config), config_error); // Monte Carlo beyond logistic

    config = SweepConfig{};
    config.e0 = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(validate(config), config_error);
}

TEST_CASE("single-point spin sweep at a fixed direction") {
    SweepConfig config;
    config.target = SweepTarget::example1;
    config.parameter = "theta";
    config.grid = {0.5, 0.5, 1, false};
    config.e0 = {0.0, 0.0, 1.0};
    config.skip = 200;
    config.window_m = 2'000;

    const SweepResult result = run_sweep(config);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0].param == 0.5);
    CHECK(result.rows[0].degree == 0.0);
    CHECK(result.rows[0].occupied_bins == 1);
    CHECK(result.rows[0].bins == 100);
}

TEST_CASE("logistic regimes through the sweep runner") {
    SweepConfig config;
    config.target = SweepTarget::logistic;
    config.parameter = "mu";
    config.grid = {2.0, 4.0, 2, true};

    const SweepResult result = run_sweep(config);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].param == 2.0);
    CHECK(result.rows[0].degree == 0.0);
    CHECK(result.rows[1].param == 4.0);
    CHECK(result.rows[1].degree > 0.5);
}

TEST_CASE("example2 sweeps the coupling with theta derived") {
    SweepConfig config;
    config.target = SweepTarget::example2;
    config.parameter = "a";
    config.grid = {0.5, 0.5, 1, false};
    config.skip = 300;
    config.window_m = 3'000;
    const SweepResult result = run_sweep(config);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0].degree >= 0.0);

    config.grid = {4.5, 4.5, 1, false}; // coupling outside [0, 4]
    CHECK_THROWS_AS(run_sweep(config), std::runtime_error);
}

TEST_CASE("a failing grid point aborts with the offending value") {
    SweepConfig config;
    config.target = SweepTarget::logistic;
    config.parameter = "mu";
    config.grid = {3.9, 4.4, 2, true}; // second point leaves the domain
    config.skip = 50;
    config.window_m = 500;
    config.workers = 1;

    try {
        run_sweep(config);
        FAIL("expected abort");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("4.4") != std::string::npos);
    }
}

TEST_CASE("csv format and byte-level determinism") {
    const SweepConfig config = small_logistic_sweep();
    const SweepResult result = run_sweep(config);

    const auto path_a = temp_file("ecd_sweep_a.csv");
    const auto path_b = temp_file("ecd_sweep_b.csv");
    emit_csv(result, path_a);
    emit_csv(run_sweep(config), path_b);

    const std::string a = slurp(path_a);
    const std::string b = slurp(path_b);
    CHECK(a == b);
    CHECK(a.starts_with("param,D,occupied_bins,M,skip,window\n"));
    CHECK(a.back() == '\n');
    CHECK(std::count(a.begin(), a.end(), '\n') == 1 + std::ptrdiff_t(result.rows.size()));

    // round-trip: parsed values re-format to the same 12-significant-digit text
    std::istringstream in(a);
    std::string line;
    std::getline(in, line); // header
    std::size_t row = 0;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const auto second_comma = line.find(',', comma + 1);
        const std::string param_text = line.substr(0, comma);
        const std::string degree_text = line.substr(comma + 1, second_comma - comma - 1);
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", std::stod(param_text));
        CHECK(param_text == buf);
        std::snprintf(buf, sizeof(buf), "%.12g", std::stod(degree_text));
        CHECK(degree_text == buf);
        ++row;
    }
    CHECK(row == result.rows.size());

    std::filesystem::remove(path_a);
    std::filesystem::remove(path_b);

    CHECK_THROWS_AS(emit_csv(result, std::filesystem::path("/nonexistent-dir/out.csv")),
                    std::runtime_error);
}

TEST_CASE("serial and concurrent sweeps produce identical rows") {
    SweepConfig config = small_logistic_sweep();
    config.workers = 1;
    const SweepResult serial = run_sweep(config);
    config.workers = 4;
    const SweepResult threaded = run_sweep(config);

    REQUIRE(serial.rows.size() == threaded.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].param == threaded.rows[i].param);
        CHECK(serial.rows[i].degree == threaded.rows[i].degree);
        CHECK(serial.rows[i].occupied_bins == threaded.rows[i].occupied_bins);
    }
}

TEST_CASE("monte carlo sweeps are reproducible per seed") {
    SweepConfig config;
    config.target = SweepTarget::logistic;
    config.parameter = "mu";
    config.grid = {3.99, 3.99, 1, false};
    config.skip = 200;
    config.window_m = 2'000;
    config.samples = 4;
    config.seed = 12345;

    const SweepResult first = run_sweep(config);
    const SweepResult second = run_sweep(config);
    CHECK(first.rows[0].degree == second.rows[0].degree);

    config.seed = 54321;
    const SweepResult reseeded = run_sweep(config);
    CHECK(reseeded.rows[0].degree != first.rows[0].degree);
}

TEST_CASE("svg output shapes") {
    SweepConfig config = small_logistic_sweep();
    config.grid.count = 64;
    const SweepResult result = run_sweep(config);

    std::ostringstream svg;
    emit_svg(result, svg);
    const std::string text = svg.str();
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("D (nats)") != std::string::npos);
    CHECK(text.find(">mu</text>") != std::string::npos);
    CHECK(count_polyline_vertices(text) == 64);

    SweepResult single;
    single.parameter = "mu";
    single.rows = {SweepRow{3.7, 0.5, 10, 100, 10, 100}};
    std::ostringstream marker;
    emit_svg(single, marker);
    CHECK(marker.str().find("<polyline") == std::string::npos);
    CHECK(marker.str().find("<circle") != std::string::npos);

    // all-zero sweeps draw the polyline along the bottom axis
    SweepResult flat;
    flat.parameter = "theta";
    for (int k = 0; k < 5; ++k) {
        flat.rows.push_back(SweepRow{double(k), 0.0, 1, 100, 10, 100});
    }
    std::ostringstream flat_svg;
    emit_svg(flat, flat_svg);
    const std::string flat_text = flat_svg.str();
    const auto start = flat_text.find("points=\"");
    REQUIRE(start != std::string::npos);
    const auto end = flat_text.find('"', start + 8);
    std::istringstream points(flat_text.substr(start + 8, end - start - 8));
    std::string pair;
    while (points >> pair) {
        const std::string y = pair.substr(pair.find(',') + 1);
        CHECK(y == "504"); // plot bottom: height 560 minus margin 56
    }

    CHECK_THROWS_AS(emit_svg(flat, std::filesystem::path("/nonexistent-dir/out.svg")),
                    std::runtime_error);
}

TEST_CASE("config files load and reject unknown keys") {
    const auto path = temp_file("ecd_config_test.cfg");
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "target = example1\n"
            << "param = theta\n"
            << "skip = 123\n"
            << "window = 456\n"
            << "bins = 10,100\n"
            << "seed = 9\n"
            << "observable = full\n"
            << "omega_tau = 0.5\n"
            << "e0 = 0,0,1\n"
            << "csv = out.csv\n"
            << "\n"
            << "[grid]\n"
            << "start = 0.25\n"
            << "stop = 2.5\n"
            << "count = 12\n"
            << "inclusive = true\n";
    }
    const SweepConfig config = load_config(path);
    CHECK(config.target == SweepTarget::example1);
    CHECK(config.parameter == "theta");
    CHECK(config.skip == 123);
    CHECK(config.window_m == 456);
    CHECK(config.bin_counts == std::vector<std::uint32_t>{10, 100});
    CHECK(config.seed == 9);
    CHECK(config.observable_mode == spin::ObservableMode::full);
    CHECK(config.omega_tau == 0.5);
    CHECK(config.e0 == spin::Vec3{0.0, 0.0, 1.0});
    CHECK(config.csv_path == "out.csv");
    CHECK(config.grid.start == 0.25);
    CHECK(config.grid.stop == 2.5);
    CHECK(config.grid.count == 12);
    CHECK(config.grid.inclusive);
    std::filesystem::remove(path);

    {
        std::ofstream out(path);
        out << "tarpit = yes\n";
    }
    CHECK_THROWS_AS(load_config(path), config_error);
    std::filesystem::remove(path);

    {
        std::ofstream out(path);
        out << "skip = twelve\n";
    }
    CHECK_THROWS_AS(load_config(path), config_error);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(load_config(temp_file("ecd_missing.cfg")), config_error);
}

TEST_CASE("multi-M sweeps record the maximizing resolution") {
    SweepConfig config = small_logistic_sweep();
    config.grid = {4.0, 4.0, 1, true};
    config.bin_counts = {10, 100};
    const SweepResult result = run_sweep(config);
    REQUIRE(result.rows.size() == 1);
    CHECK((result.rows[0].bins == 10 || result.rows[0].bins == 100));

    config.bin_counts = {10};
    const SweepResult ten = run_sweep(config);
    config.bin_counts = {100};
    const SweepResult hundred = run_sweep(config);
    CHECK(result.rows[0].degree == std::max(ten.rows[0].degree, hundred.rows[0].degree));
}
