#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "sngp/data.hpp"
#include "sngp/gram.hpp"
#include "sngp/lookup.hpp"
#include "sngp/regression.hpp"
#include "sngp/simulate.hpp"
#include "sngp/spectral.hpp"
#include "sngp/theory.hpp"

namespace sngp::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, delim)) parts.push_back(item);
    return parts;
}

Dataset load_dataset(const std::string& descriptor, bool normalize) {
    const auto parts = split(descriptor, ':');
    if (parts.empty()) throw std::runtime_error("dataset: empty descriptor");
    Dataset ds;
    if (parts[0] == "circulant") {
        if (parts.size() != 3) throw std::runtime_error("dataset: expected circulant:M:blocks");
        const int m = std::stoi(parts[1]);
        const int blocks = std::stoi(parts[2]);
        ds = circulant_dataset(m);
        const Eigen::VectorXd wave = square_wave_target(m, blocks);
        ds.y = wave;
        ds.labels.resize(m);
        for (int i = 0; i < m; ++i) ds.labels[i] = wave(i) > 0 ? 1 : 0;
    } else if (parts[0] == "idx") {
        if (parts.size() != 3) throw std::runtime_error("dataset: expected idx:<images>:<labels>");
        ds = load_idx(parts[1], parts[2]);
    } else if (parts[0] == "csv") {
        if (parts.size() != 2) throw std::runtime_error("dataset: expected csv:<path>");
        ds = load_csv(parts[1]);
    } else {
        throw std::runtime_error("dataset: unknown source '" + parts[0] + "'");
    }
    if (normalize) normalize_rows(ds.x);
    return ds;
}

std::string table_cache_name(double f) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "table_f%.12g.sngp", f);
    return buf;
}

LookupTable table_for(double f, const std::string& table_dir) {
    if (!table_dir.empty()) {
        const fs::path path = fs::path(table_dir) / table_cache_name(f);
        if (fs::exists(path)) {
            auto t = LookupTable::load(path);
            if (std::abs(t.f() - f) <= 1e-12) return t;
            std::cerr << "note: cache " << path << " holds f=" << t.f() << ", rebuilding\n";
        }
        auto t = build_lookup(f);
        fs::create_directories(table_dir);
        t.save(path);
        return t;
    }
    return build_lookup(f);
}

Eigen::MatrixXd rows_of(const Eigen::MatrixXd& x, const std::vector<int>& idx) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), x.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(idx[i]);
    return out;
}

std::vector<int> pick(const std::vector<int>& all, const std::vector<int>& idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(all[i]);
    return out;
}

// sign-rule accuracy for single-column +-1 targets, argmax for one-hot
double accuracy_of(const Eigen::MatrixXd& mu, const Eigen::MatrixXd& y_true,
                   const std::vector<int>& labels) {
    if (mu.cols() == 1) {
        int ok = 0;
        for (Eigen::Index i = 0; i < mu.rows(); ++i)
            if ((mu(i, 0) > 0) == (y_true(i, 0) > 0)) ++ok;
        return mu.rows() ? double(ok) / double(mu.rows()) : 0.0;
    }
    return evaluate(mu, y_true, labels).accuracy;
}

struct CellStats {
    double mean = 0.0;
    double stddev = 0.0;
};

CellStats stats_of(const std::vector<double>& v) {
    CellStats s;
    for (double x : v) s.mean += x;
    s.mean /= v.empty() ? 1.0 : double(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(ss / double(v.size() - 1));
    }
    return s;
}

}  // namespace

int run_sweep(const SweepSpec& spec) {
    const Dataset pool = load_dataset(spec.dataset, spec.normalize);
    const int m = static_cast<int>(pool.x.rows());
    if (spec.p_train < 1 || spec.p_train > m)
        throw std::runtime_error("sweep: --p-train outside the dataset pool");

    std::ofstream out(spec.out);
    if (!out) throw std::runtime_error("sweep: cannot open output " + spec.out);
    out << "f,L,trial,accuracy,mse,ed\n";

    struct Row {
        double f;
        int depth;
        int trial;
        double acc, mse, ed;
    };
    std::vector<Row> rows;

    for (double f : spec.f_values) {
        const auto table = table_for(f, spec.table_dir);
        const double sigma = table.sigma();
        std::vector<int> depths = spec.depths;
        std::sort(depths.begin(), depths.end());
        for (int trial = 0; trial < spec.trials; ++trial) {
            const auto split = subsample(pool, spec.p_train, spec.seed + trial);
            std::vector<int> test_idx = split.test_idx;
            if (spec.p_test > 0 && spec.p_test < static_cast<int>(test_idx.size()))
                test_idx.resize(spec.p_test);
            const Eigen::MatrixXd x_tr = rows_of(pool.x, split.train_idx);
            const Eigen::MatrixXd x_te = rows_of(pool.x, test_idx);
            const Eigen::MatrixXd y_tr = rows_of(pool.y, split.train_idx);
            const Eigen::MatrixXd y_te = rows_of(pool.y, test_idx);
            const auto labels_te = pick(pool.labels, test_idx);

            GramPair g = input_gram(x_tr, x_te);
            int layer = 0;
            for (int depth : depths) {
                while (layer < depth) {
                    g = propagate(g, table, sigma);
                    ++layer;
                }
                // a failing cell becomes a NaN row; the sweep continues
                double acc = std::nan(""), mse = std::nan(""), ed = std::nan("");
                try {
                    const Eigen::MatrixXd mu = krr_predict(g, y_tr, spec.ridge);
                    acc = accuracy_of(mu, y_te, labels_te);
                    mse = y_te.size() ? (mu - y_te).squaredNorm() / double(y_te.size()) : 0.0;
                    const auto s = decompose(g.k_train, y_tr);
                    ed = effective_dim(s.eta);
                } catch (const std::exception& e) {
                    std::cerr << "sweep: cell f=" << f << " L=" << depth << " trial=" << trial
                              << " failed: " << e.what() << "\n";
                }
                rows.push_back({f, depth, trial, acc, mse, ed});
            }
        }
    }

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.f != b.f) return a.f < b.f;
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.trial < b.trial;
    });
    for (const auto& r : rows)
        out << fmt(r.f) << ',' << r.depth << ',' << r.trial << ',' << fmt(r.acc) << ','
            << fmt(r.mse) << ',' << fmt(r.ed) << '\n';

    // per-cell summaries
    for (double f : spec.f_values) {
        std::vector<int> depths = spec.depths;
        std::sort(depths.begin(), depths.end());
        for (int depth : depths) {
            std::vector<double> accs, mses, eds;
            for (const auto& r : rows)
                if (r.f == f && r.depth == depth) {
                    accs.push_back(r.acc);
                    mses.push_back(r.mse);
                    eds.push_back(r.ed);
                }
            const auto sa = stats_of(accs), sm = stats_of(mses), se = stats_of(eds);
            out << fmt(f) << ',' << depth << ",mean," << fmt(sa.mean) << ',' << fmt(sm.mean) << ','
                << fmt(se.mean) << '\n';
            out << fmt(f) << ',' << depth << ",std," << fmt(sa.stddev) << ',' << fmt(sm.stddev)
                << ',' << fmt(se.stddev) << '\n';
        }
    }
    if (!out) throw std::runtime_error("sweep: write failed for " + spec.out);
    std::cout << "sweep: wrote " << rows.size() << " rows to " << spec.out << "\n";
    return 0;
}

int run_theory(const SweepSpec& spec) {
    const Dataset pool = load_dataset(spec.dataset, spec.normalize);
    const int m = static_cast<int>(pool.x.rows());
    if (spec.p_train < 1 || spec.p_train >= m)
        throw std::runtime_error("theory: --p-train must leave a non-empty test set");

    std::ofstream out(spec.out);
    if (!out) throw std::runtime_error("theory: cannot open output " + spec.out);
    out << "f,L,mse_experiment,e_g_theory\n";

    for (double f : spec.f_values) {
        const auto table = table_for(f, spec.table_dir);
        const double sigma = table.sigma();
        std::vector<int> depths = spec.depths;
        std::sort(depths.begin(), depths.end());

        GramPair g = input_gram(pool.x, Eigen::MatrixXd(0, pool.x.cols()));
        int layer = 0;
        for (int depth : depths) {
            while (layer < depth) {
                g = propagate(g, table, sigma);
                ++layer;
            }
            double eg_theory = std::nan("");
            double mse_exp = std::nan("");
            try {
                const auto s = decompose(g.k_train, pool.y);
                auto tr = modal_errors(s.eta, spec.p_train, spec.ridge);
                eg_theory = generalization_error(tr, s.v_bar_sq());
                if (!spec.report_dir.empty()) {
                    fs::create_directories(spec.report_dir);
                    char cell_name[96];
                    std::snprintf(cell_name, sizeof cell_name, "f%.12g_L%d", f, depth);
                    write_spectrum_csv(s, fs::path(spec.report_dir) /
                                              (std::string("spectrum_") + cell_name + ".csv"));
                    write_theory_csv(s.eta, s.v_bar_sq(), tr,
                                     fs::path(spec.report_dir) /
                                         (std::string("theory_") + cell_name + ".csv"));
                }

                // empirical generalization error under the discrete-uniform
                // input law: KRR on a seeded split, error averaged over the
                // whole pool, then over trials
                double acc_mse = 0.0;
                for (int trial = 0; trial < spec.trials; ++trial) {
                    const auto split = subsample(pool, spec.p_train, spec.seed + trial);
                    GramPair cell;
                    cell.k_train = Eigen::MatrixXd(spec.p_train, spec.p_train);
                    for (int i = 0; i < spec.p_train; ++i)
                        for (int j = 0; j < spec.p_train; ++j)
                            cell.k_train(i, j) = g.k_train(split.train_idx[i], split.train_idx[j]);
                    cell.k_cross = Eigen::MatrixXd(m, spec.p_train);
                    for (int i = 0; i < m; ++i)
                        for (int j = 0; j < spec.p_train; ++j)
                            cell.k_cross(i, j) = g.k_train(i, split.train_idx[j]);
                    cell.train_norms_sq = cell.k_train.diagonal();
                    cell.test_norms_sq = g.train_norms_sq;
                    const Eigen::MatrixXd y_tr = rows_of(pool.y, split.train_idx);
                    const Eigen::MatrixXd mu = krr_predict(cell, y_tr, spec.ridge);
                    acc_mse += (mu - pool.y).squaredNorm() / double(pool.y.size());
                }
                mse_exp = acc_mse / spec.trials;
            } catch (const std::exception& e) {
                std::cerr << "theory: cell f=" << f << " L=" << depth << " failed: " << e.what()
                          << "\n";
            }
            out << fmt(f) << ',' << depth << ',' << fmt(mse_exp) << ',' << fmt(eg_theory) << '\n';
        }
    }
    if (!out) throw std::runtime_error("theory: write failed for " + spec.out);
    std::cout << "theory: wrote results to " << spec.out << "\n";
    return 0;
}

int run_verify(const VerifySpec& spec) {
    std::printf("%8s %8s %14s %14s %10s %8s\n", "f", "theta", "estimate", "expected", "stderr",
                "z");
    bool failed = false;
    std::uint64_t stream = 0;
    for (double f : spec.f_values) {
        const auto cfg = KernelConfig::make(f);
        for (double theta : spec.thetas) {
            Eigen::VectorXd xp(2), xq(2);
            xp << 1.0, 0.0;
            xq << std::cos(theta), std::sin(theta);
            const auto est =
                mc_kernel_estimate(xp, xq, cfg, spec.width, spec.trials, spec.seed + stream++);
            const double expected = spec.kernel_scale * kernel_single(xp, xq, cfg);
            const double z = est.std_error > 0 ? (est.mean - expected) / est.std_error : 0.0;
            std::printf("%8.4f %8.4f %14.8f %14.8f %10.3g %8.2f\n", f, theta, est.mean, expected,
                        est.std_error, z);
            if (std::abs(z) > 4.0) failed = true;
        }
    }
    if (failed) {
        std::cerr << "verify: at least one |z| exceeded 4\n";
        return 3;
    }
    std::cout << "verify: all estimates within 4 standard errors\n";
    return 0;
}

int run_table_build(const TableSpec& spec) {
    const auto table = build_lookup(spec.f, spec.grid_size, spec.sigma);
    table.save(spec.path);
    std::cout << "table: wrote " << spec.path << " (f=" << table.f() << ", sigma=" << table.sigma()
              << ", nodes=" << table.size() << ")\n";
    return 0;
}

int run_table_inspect(const std::string& path) {
    const auto table = LookupTable::load(path);
    const double tau = tau_from_f(table.f());
    double max_err = 0.0;
    for (int i = 0; i <= 20000; ++i) {
        const double c = -1.0 + 2.0 * i / 20000.0;
        max_err = std::max(max_err,
                           std::abs(table.map_cosine(c) - cosine_map(c, tau, table.sigma())));
    }
    std::cout << "table: " << path << "\n  f = " << table.f() << "\n  sigma = " << table.sigma()
              << "\n  nodes = " << table.size() << "\n  grid = [" << table.grid().front() << ", "
              << table.grid().back() << "]\n  max interpolation error vs direct evaluation = "
              << max_err << "\n";
    return 0;
}

}  // namespace sngp::cli
