#include <cstdlib>
#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

std::string default_table_dir() {
    const char* env = std::getenv("SNGP_TABLE_DIR");
    return env ? env : "";
}

void add_sweep_flags(CLI::App* cmd, sngp::cli::SweepSpec& spec) {
    cmd->add_option("--dataset", spec.dataset,
                    "circulant:M:blocks | idx:<images>:<labels> | csv:<path>")
        ->required();
    cmd->add_option("--f-grid", spec.f_values, "sparsity values in (0, 0.5]")->required();
    cmd->add_option("--depth-grid", spec.depths, "hidden-layer depths")->required();
    cmd->add_option("--p-train", spec.p_train, "training samples per trial")->required();
    cmd->add_option("--p-test", spec.p_test, "cap on test samples (0 = all remaining)");
    cmd->add_option("--ridge", spec.ridge, "ridge parameter lambda");
    cmd->add_option("--trials", spec.trials, "seeded repetitions")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", spec.seed, "base seed");
    cmd->add_option("--out", spec.out, "output CSV path")->required();
    cmd->add_option("--table-dir", spec.table_dir, "lookup-table cache directory")
        ->default_val(default_table_dir());
    cmd->add_flag("--normalize", spec.normalize, "unit-normalize input rows");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse NNGP kernels, exact kernel ridge regression, and learning-curve theory"};
    app.require_subcommand(1);

    sngp::cli::SweepSpec sweep_spec;
    auto* sweep = app.add_subcommand("sweep", "accuracy/MSE/ED over an f x L grid");
    add_sweep_flags(sweep, sweep_spec);

    sngp::cli::SweepSpec theory_spec;
    auto* theory = app.add_subcommand("theory", "theoretical E_g vs measured KRR error");
    add_sweep_flags(theory, theory_spec);
    theory->add_option("--report-dir", theory_spec.report_dir,
                       "also write per-cell spectrum and modal-error report CSVs here");

    sngp::cli::VerifySpec verify_spec;
    auto* verify = app.add_subcommand("verify", "Monte-Carlo check of the kernel formula");
    verify->add_option("--f-grid", verify_spec.f_values, "sparsity values")
        ->default_val(std::vector<double>{0.1, 0.3, 0.5});
    verify->add_option("--theta-grid", verify_spec.thetas, "angles in [0, pi]")
        ->default_val(std::vector<double>{0.0, std::numbers::pi / 3, std::numbers::pi / 2});
    verify->add_option("--width", verify_spec.width, "hidden units per trial");
    verify->add_option("--trials", verify_spec.trials, "independent trials");
    verify->add_option("--seed", verify_spec.seed, "base seed");
    verify->add_option("--kernel-scale", verify_spec.kernel_scale,
                       "scale the reference kernel (sensitivity checks)");

    auto* table = app.add_subcommand("table", "lookup-table cache management");
    table->require_subcommand(1);
    sngp::cli::TableSpec table_spec;
    auto* build = table->add_subcommand("build", "build and save a table");
    build->add_option("--f", table_spec.f, "sparsity")->required();
    build->add_option("--grid-size", table_spec.grid_size, "node count (>= 65)");
    double sigma_opt = 0.0;
    auto* sig = build->add_option("--sigma", sigma_opt, "weight scale (default sigma*)");
    build->add_option("--out", table_spec.path, "output file")->required();
    std::string inspect_path;
    auto* inspect = table->add_subcommand("inspect", "validate a cache file");
    inspect->add_option("path", inspect_path, "cache file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }

    try {
        if (sweep->parsed()) return sngp::cli::run_sweep(sweep_spec);
        if (theory->parsed()) return sngp::cli::run_theory(theory_spec);
        if (verify->parsed()) return sngp::cli::run_verify(verify_spec);
        if (table->parsed()) {
            if (build->parsed()) {
                if (sig->count() > 0) table_spec.sigma = sigma_opt;
                return sngp::cli::run_table_build(table_spec);
            }
            return sngp::cli::run_table_inspect(inspect_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
