#pragma once

#include <Eigen/Core>
#include <filesystem>

namespace sngp {

/// Discrete Mercer estimate from an M x M Gram: eigenvalues divided by the
/// number of non-zero eigenvalues N, eigenvectors scaled by sqrt(M), and
/// target coefficients v_bar = (1/sqrt(M)) Phi^T Y over the unscaled
/// eigenvectors. Zero modes (below 1e-12 * eta_max) are dropped.
struct Spectrum {
    Eigen::VectorXd eta;   // length N, descending, each = raw eigenvalue / N
    Eigen::MatrixXd phi;   // M x N, orthonormal columns scaled by sqrt(M)
    Eigen::MatrixXd v_bar; // N x k
    int m_total = 0;
    int n_nonzero = 0;

    /// Per-mode target power summed over output channels.
    Eigen::VectorXd v_bar_sq() const;
};

Spectrum decompose(const Eigen::MatrixXd& k_full, const Eigen::MatrixXd& y_full);

/// Participation ratio of the eigenvalues with the leading one omitted:
/// (sum_{rho>0} eta)^2 / sum_{rho>0} eta^2; 0 if nothing remains.
double effective_dim(const Eigen::VectorXd& eta);

struct AlignmentCurve {
    Eigen::VectorXd c; // C(rho) for rho = 1..N, non-decreasing, ends at 1
    double auc = 0.0;  // mean of C over rho
};

/// Normalized cumulative target power across modes (channel powers summed).
AlignmentCurve alignment_curve(const Eigen::MatrixXd& v_bar);

/// CSV with columns rho, eta, v_bar_sq_total.
void write_spectrum_csv(const Spectrum& s, const std::filesystem::path& path);

}  // namespace sngp
