#pragma once

#include <Eigen/Core>
#include <vector>

#include "sngp/gram.hpp"

namespace sngp {

struct Prediction {
    Eigen::MatrixXd mu;      // T x k posterior means
    std::vector<int> labels; // argmax per row, lowest index on ties
    double mse = 0.0;        // mean over all T*k squared residuals
    double accuracy = 0.0;
};

/// Posterior mean mu = K_cross solve(K_train + ridge I, Y).
/// ridge = 0 uses a symmetric-eigendecomposition pseudo-inverse with relative
/// cutoff 1e-10; ridge > 0 uses an LDLT factorization.
Eigen::MatrixXd krr_predict(const GramPair& g, const Eigen::MatrixXd& y_train, double ridge);

/// Classification/regression metrics of mu against test targets and labels.
Prediction evaluate(const Eigen::MatrixXd& mu, const Eigen::MatrixXd& y_test,
                    const std::vector<int>& true_labels);

}  // namespace sngp
