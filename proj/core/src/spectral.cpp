#include "sngp/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sngp {

namespace {
constexpr double kNonZeroRcond = 1e-12;
constexpr double kPsdTol = 1e-8;
constexpr double kSymTol = 1e-10;
}  // namespace

Eigen::VectorXd Spectrum::v_bar_sq() const {
    return v_bar.array().square().rowwise().sum();
}

Spectrum decompose(const Eigen::MatrixXd& k_full, const Eigen::MatrixXd& y_full) {
    const Eigen::Index m = k_full.rows();
    if (k_full.cols() != m) throw std::invalid_argument("decompose: matrix must be square");
    if (y_full.rows() != m) throw std::invalid_argument("decompose: target row count mismatch");
    const double scale = k_full.cwiseAbs().maxCoeff();
    const double asym = (k_full - k_full.transpose()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && asym > kSymTol * scale)
        throw std::invalid_argument("decompose: matrix is significantly asymmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (k_full + k_full.transpose()));
    if (es.info() != Eigen::Success) throw std::runtime_error("decompose: eigensolve failed");
    const Eigen::VectorXd& w = es.eigenvalues();  // ascending
    const double w_max = w(m - 1);
    if (!(w_max > 0.0)) throw std::runtime_error("decompose: no positive eigenvalues");
    if (w(0) < -kPsdTol * w_max) {
        std::ostringstream msg;
        msg << "decompose: PSD violation, min eigenvalue " << w(0) << " vs max " << w_max;
        throw std::runtime_error(msg.str());
    }

    Eigen::Index n = 0;
    for (Eigen::Index i = 0; i < m; ++i)
        if (w(i) > kNonZeroRcond * w_max) ++n;

    Spectrum s;
    s.m_total = static_cast<int>(m);
    s.n_nonzero = static_cast<int>(n);
    s.eta.resize(n);
    s.phi.resize(m, n);
    s.v_bar.resize(n, y_full.cols());
    const double sqrt_m = std::sqrt(static_cast<double>(m));
    // eigensolver is ascending; emit descending
    for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index src = m - 1 - r;
        s.eta(r) = w(src) / static_cast<double>(n);
        s.phi.col(r) = sqrt_m * es.eigenvectors().col(src);
        s.v_bar.row(r) = es.eigenvectors().col(src).transpose() * y_full / sqrt_m;
    }
    return s;
}

double effective_dim(const Eigen::VectorXd& eta) {
    if (eta.size() < 2) throw std::invalid_argument("effective_dim: need at least 2 eigenvalues");
    const auto rest = eta.tail(eta.size() - 1);
    const double s2 = rest.squaredNorm();
    if (s2 == 0.0) return 0.0;
    const double s1 = rest.sum();
    return s1 * s1 / s2;
}

AlignmentCurve alignment_curve(const Eigen::MatrixXd& v_bar) {
    const Eigen::Index n = v_bar.rows();
    if (n == 0) throw std::invalid_argument("alignment_curve: empty coefficient matrix");
    Eigen::VectorXd power = v_bar.array().square().rowwise().sum();
    const double total = power.sum();
    if (!(total > 0.0)) throw std::domain_error("alignment_curve: all-zero target");
    AlignmentCurve out;
    out.c.resize(n);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        acc += power(i);
        out.c(i) = acc / total;
    }
    out.auc = out.c.mean();
    return out;
}

void write_spectrum_csv(const Spectrum& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_spectrum_csv: cannot open " + path.string());
    out << "rho,eta,v_bar_sq_total\n";
    const Eigen::VectorXd power = s.v_bar_sq();
    char buf[96];
    for (Eigen::Index i = 0; i < s.eta.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n", static_cast<long long>(i), s.eta(i),
                      power(i));
        out << buf;
    }
    if (!out) throw std::runtime_error("write_spectrum_csv: write failed for " + path.string());
}

}  // namespace sngp
