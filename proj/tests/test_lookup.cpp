#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "sngp/kernel.hpp"
#include "sngp/lookup.hpp"

using namespace sngp;
namespace fs = std::filesystem;

namespace {
fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / name;
}
}  // namespace

TEST_CASE("build_lookup reproduces direct evaluation within 1e-6") {
    for (double f : {0.05, 0.139, 0.3, 0.5}) {
        const auto table = build_lookup(f);
        const double tau = tau_from_f(f);
        const double ss = sigma_star(tau);
        CHECK(table.sigma() == doctest::Approx(ss).epsilon(1e-14));
        double max_err = 0.0;
        for (int i = 0; i <= 10000; ++i) {
            const double c = -1.0 + 2.0 * i / 10000.0;
            max_err = std::max(max_err, std::abs(table.map_cosine(c) - cosine_map(c, tau, ss)));
        }
        CHECK(max_err <= 1e-6);
    }
}

TEST_CASE("f=0.5 table matches the closed-form kernel profile") {
    const auto table = build_lookup(0.5);
    double max_err = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double c = -1.0 + 2.0 * i / 10000.0;
        const double closed = arccos_kernel_closed(std::acos(c), table.sigma());
        max_err = std::max(max_err, std::abs(table.map_cosine(c) - closed));
    }
    CHECK(max_err <= 1e-6);
}

TEST_CASE("table nodes interpolate exactly and c_out is monotone in [0,1]") {
    const auto table = build_lookup(0.2, 513);
    const auto grid = table.grid();
    const auto vals = table.values();
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(table.map_cosine(grid[i]) == doctest::Approx(vals[i]).epsilon(1e-15));
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) CHECK(vals[i + 1] >= vals[i]);
    CHECK(vals.front() >= 0.0);
    CHECK(vals.back() == doctest::Approx(1.0).epsilon(1e-10));  // sigma* fixed point
    CHECK(grid.front() == -1.0);
    CHECK(grid.back() == 1.0);
}

TEST_CASE("grid too small is rejected with the measured error") {
    CHECK_THROWS_AS((void)build_lookup(0.5, 64), std::invalid_argument);  // below minimum
    CHECK_THROWS_WITH_AS((void)build_lookup(0.5, 65), doctest::Contains("max error"),
                         std::runtime_error);
}

TEST_CASE("cache file round-trips bit-exactly") {
    const auto table = build_lookup(0.3, 257);
    const auto path = temp_file("sngp_table_test.bin");
    table.save(path);
    const auto loaded = LookupTable::load(path);
    CHECK(loaded.f() == table.f());
    CHECK(loaded.sigma() == table.sigma());
    REQUIRE(loaded.size() == table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(loaded.grid()[i] == table.grid()[i]);
        CHECK(loaded.values()[i] == table.values()[i]);
    }
    fs::remove(path);
}

TEST_CASE("loader rejects corrupt files") {
    const auto path = temp_file("sngp_table_corrupt.bin");
    {
        std::ofstream out(path, std::ios::binary);
        out << "GARBAGE";
    }
    CHECK_THROWS_WITH_AS((void)LookupTable::load(path), doctest::Contains("magic"),
                         std::runtime_error);

    const auto table = build_lookup(0.3, 257);
    table.save(path);
    fs::resize_file(path, fs::file_size(path) / 2);  // truncate
    CHECK_THROWS_AS((void)LookupTable::load(path), std::runtime_error);
    fs::remove(path);
}

TEST_CASE("rebuild with the same parameters is byte-identical") {
    const auto p1 = temp_file("sngp_table_a.bin");
    const auto p2 = temp_file("sngp_table_b.bin");
    build_lookup(0.139, 1025).save(p1);
    build_lookup(0.139, 1025).save(p2);
    std::ifstream a(p1, std::ios::binary), b(p2, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK(!sa.empty());
    fs::remove(p1);
    fs::remove(p2);
}
