#include "sngp/regression.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <sstream>
#include <stdexcept>

namespace sngp {

namespace {
constexpr double kPinvRcond = 1e-10;
}

Eigen::MatrixXd krr_predict(const GramPair& g, const Eigen::MatrixXd& y_train, double ridge) {
    const Eigen::Index p = g.k_train.rows();
    if (g.k_train.cols() != p) throw std::invalid_argument("krr_predict: k_train must be square");
    if (y_train.rows() != p) throw std::invalid_argument("krr_predict: y_train row count mismatch");
    if (g.k_cross.cols() != p) throw std::invalid_argument("krr_predict: k_cross column mismatch");
    if (ridge < 0.0) throw std::invalid_argument("krr_predict: ridge must be >= 0");

    if (ridge > 0.0) {
        Eigen::MatrixXd a = g.k_train;
        a.diagonal().array() += ridge;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
        if (ldlt.info() != Eigen::Success)
            throw std::runtime_error("krr_predict: LDLT factorization failed");
        return g.k_cross * ldlt.solve(y_train);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.k_train);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("krr_predict: eigendecomposition failed");
    const Eigen::VectorXd& w = es.eigenvalues();
    const double cutoff = kPinvRcond * w.cwiseAbs().maxCoeff();
    Eigen::Index kept = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w(i) > cutoff) ++kept;
    if (kept == 0) throw std::runtime_error("krr_predict: kernel matrix is numerically zero");

    Eigen::MatrixXd vt(kept, p);
    Eigen::VectorXd inv_w(kept);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) > cutoff) {
            vt.row(r) = es.eigenvectors().col(i).transpose();
            inv_w(r) = 1.0 / w(i);
            ++r;
        }
    }
    const Eigen::MatrixXd proj = inv_w.asDiagonal() * (vt * y_train);
    return g.k_cross * (vt.transpose() * proj);
}

Prediction evaluate(const Eigen::MatrixXd& mu, const Eigen::MatrixXd& y_test,
                    const std::vector<int>& true_labels) {
    if (mu.rows() != y_test.rows() || mu.cols() != y_test.cols())
        throw std::invalid_argument("evaluate: mu and y_test shapes differ");
    if (!true_labels.empty() && static_cast<Eigen::Index>(true_labels.size()) != mu.rows())
        throw std::invalid_argument("evaluate: true_labels length mismatch");

    Prediction pred;
    pred.mu = mu;
    pred.mse = (mu - y_test).squaredNorm() / static_cast<double>(mu.size());
    pred.labels.resize(static_cast<std::size_t>(mu.rows()));
    int correct = 0;
    for (Eigen::Index i = 0; i < mu.rows(); ++i) {
        int arg = 0;
        for (Eigen::Index j = 1; j < mu.cols(); ++j)
            if (mu(i, j) > mu(i, arg)) arg = static_cast<int>(j);
        pred.labels[static_cast<std::size_t>(i)] = arg;
        if (!true_labels.empty() && arg == true_labels[static_cast<std::size_t>(i)]) ++correct;
    }
    pred.accuracy =
        true_labels.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(mu.rows());
    return pred;
}

}  // namespace sngp
