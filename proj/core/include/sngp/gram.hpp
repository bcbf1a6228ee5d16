#pragma once

#include <Eigen/Core>
#include <filesystem>

#include "sngp/kernel.hpp"
#include "sngp/lookup.hpp"

namespace sngp {

/// Train x train and test x train kernel matrices at one layer, with the
/// per-sample squared norms (the diagonal) tracked separately.
struct GramPair {
    Eigen::MatrixXd k_train;        // P x P, symmetric
    Eigen::MatrixXd k_cross;        // T x P
    Eigen::VectorXd train_norms_sq; // length P
    Eigen::VectorXd test_norms_sq;  // length T
    int layer = 0;
};

/// Layer-0 Gram of raw dot products. Throws std::domain_error naming the row
/// index if any input row has zero norm.
GramPair input_gram(const Eigen::MatrixXd& x_train, const Eigen::MatrixXd& x_test);

/// One kernel composition step. Cosines are pushed through the table and
/// rescaled by the geometric mean of the tracked norms; with sigma = sigma*
/// the norms are unchanged. Cosines outside [-1 - 1e-12, 1 + 1e-12] raise
/// std::runtime_error reporting the largest violation.
GramPair propagate(const GramPair& g, const LookupTable& table, double sigma);

/// Compose config.depth layers starting from raw inputs, then add
/// config.offset once to every entry (and the tracked norms). A prebuilt
/// table for the same f may be supplied; otherwise one is built at
/// config.sigma.
GramPair gram_deep(const Eigen::MatrixXd& x_train, const Eigen::MatrixXd& x_test,
                   const KernelConfig& config, const LookupTable* table = nullptr);

/// Plain CSV export of a matrix, 17 significant digits per entry.
void write_matrix_csv(const Eigen::MatrixXd& m, const std::filesystem::path& path);

}  // namespace sngp
