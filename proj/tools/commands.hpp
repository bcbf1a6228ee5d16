#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sngp::cli {

struct SweepSpec {
    std::vector<double> f_values;
    std::vector<int> depths;
    double ridge = 0.0;
    int p_train = 0;
    int p_test = 0;  // 0 = everything left
    int trials = 1;
    std::uint64_t seed = 0;
    std::string dataset;
    std::string out;
    std::string table_dir;
    std::string report_dir;  // theory: per-cell spectrum/theory report CSVs
    bool normalize = false;
};

struct VerifySpec {
    std::vector<double> f_values;
    std::vector<double> thetas;
    int width = 100000;
    int trials = 32;
    std::uint64_t seed = 0;
    double kernel_scale = 1.0;  // sensitivity knob: scales the reference kernel
};

struct TableSpec {
    double f = 0.5;
    int grid_size = 2049;
    std::optional<double> sigma;
    std::string path;
};

int run_sweep(const SweepSpec& spec);
int run_theory(const SweepSpec& spec);
int run_verify(const VerifySpec& spec);
int run_table_build(const TableSpec& spec);
int run_table_inspect(const std::string& path);

}  // namespace sngp::cli
