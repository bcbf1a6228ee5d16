#include "sngp/gram.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sngp/parallel.hpp"

namespace sngp {

namespace {
constexpr double kClampBand = 1e-12;

Eigen::VectorXd row_norms_sq(const Eigen::MatrixXd& x, const char* which) {
    Eigen::VectorXd n = x.rowwise().squaredNorm();
    for (Eigen::Index i = 0; i < n.size(); ++i) {
        if (!(n(i) > 0.0)) {
            std::ostringstream msg;
            msg << "input_gram: zero-norm " << which << " row " << i;
            throw std::domain_error(msg.str());
        }
    }
    return n;
}
}  // namespace

GramPair input_gram(const Eigen::MatrixXd& x_train, const Eigen::MatrixXd& x_test) {
    if (x_test.cols() > 0 && x_train.cols() != x_test.cols())
        throw std::invalid_argument("input_gram: train/test feature dimensions differ");
    GramPair g;
    g.train_norms_sq = row_norms_sq(x_train, "train");
    g.test_norms_sq = x_test.rows() > 0 ? row_norms_sq(x_test, "test") : Eigen::VectorXd(0);
    g.k_train.noalias() = x_train * x_train.transpose();
    // exact symmetry and an exactly consistent diagonal
    g.k_train = 0.5 * (g.k_train + g.k_train.transpose()).eval();
    g.k_train.diagonal() = g.train_norms_sq;
    g.k_cross.noalias() = x_test * x_train.transpose();
    g.layer = 0;
    return g;
}

GramPair propagate(const GramPair& g, const LookupTable& table, double sigma) {
    const Eigen::Index p = g.k_train.rows();
    const Eigen::Index t = g.k_cross.rows();
    const double table_scale = sigma * sigma / (table.sigma() * table.sigma());
    const double fixed_val = table.value_at_one();

    GramPair out;
    out.layer = g.layer + 1;
    out.train_norms_sq = table_scale * fixed_val * g.train_norms_sq;
    out.test_norms_sq = table_scale * fixed_val * g.test_norms_sq;
    out.k_train.resize(p, p);
    out.k_cross.resize(t, g.k_cross.cols());

    std::vector<double> violation(static_cast<std::size_t>(p + t), 0.0);
    auto map_entry = [&](double k, double ni, double nj, double* viol) {
        const double scale = std::sqrt(ni * nj);
        double c = k / scale;
        if (c > 1.0 + kClampBand || c < -1.0 - kClampBand)
            *viol = std::max(*viol, std::abs(c) - 1.0);
        c = std::min(1.0, std::max(-1.0, c));
        return table_scale * scale * table.map_cosine(c);
    };

    // upper triangle by row, mirrored afterwards; deterministic under any schedule
    parallel_for(static_cast<std::size_t>(p), [&](std::size_t i) {
        double* viol = &violation[i];
        out.k_train(i, i) = out.train_norms_sq(static_cast<Eigen::Index>(i));
        for (Eigen::Index j = static_cast<Eigen::Index>(i) + 1; j < p; ++j)
            out.k_train(i, j) =
                map_entry(g.k_train(i, j), g.train_norms_sq(i), g.train_norms_sq(j), viol);
    });
    parallel_for(static_cast<std::size_t>(t), [&](std::size_t i) {
        double* viol = &violation[p + i];
        for (Eigen::Index j = 0; j < g.k_cross.cols(); ++j)
            out.k_cross(i, j) =
                map_entry(g.k_cross(i, j), g.test_norms_sq(i), g.train_norms_sq(j), viol);
    });
    double max_violation = 0.0;
    for (double v : violation) max_violation = std::max(max_violation, v);
    if (max_violation > 0.0) {
        std::ostringstream msg;
        msg << "propagate: cosine left [-1, 1] by " << max_violation << " at layer " << out.layer;
        throw std::runtime_error(msg.str());
    }
    out.k_train.triangularView<Eigen::StrictlyLower>() = out.k_train.transpose();
    return out;
}

GramPair gram_deep(const Eigen::MatrixXd& x_train, const Eigen::MatrixXd& x_test,
                   const KernelConfig& config, const LookupTable* table) {
    if (config.depth < 1) throw std::invalid_argument("gram_deep: depth must be >= 1");
    LookupTable owned = table ? LookupTable(*table) : build_lookup(config.f, 2049, config.sigma);
    if (std::abs(owned.f() - config.f) > 1e-12)
        throw std::invalid_argument("gram_deep: lookup table built for a different sparsity");

    GramPair g = input_gram(x_train, x_test);
    for (int l = 0; l < config.depth; ++l) g = propagate(g, owned, config.sigma);
    if (config.offset != 0.0) {
        g.k_train.array() += config.offset;
        g.k_cross.array() += config.offset;
        g.train_norms_sq.array() += config.offset;
        g.test_norms_sq.array() += config.offset;
    }
    return g;
}

void write_matrix_csv(const Eigen::MatrixXd& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_matrix_csv: cannot open " + path.string());
    char buf[40];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            out << buf << (j + 1 < m.cols() ? "," : "");
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_matrix_csv: write failed for " + path.string());
}

}  // namespace sngp
