#include "sngp/simulate.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sngp/numerics.hpp"
#include "sngp/parallel.hpp"

namespace sngp {

namespace {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_counter(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c, std::uint64_t d) {
    std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    h = splitmix64(h ^ d);
    return h;
}

// One weight column, two normals per hash pair (both Box-Muller outputs).
void fill_weight_column(Eigen::VectorXd& w, std::uint64_t seed, std::uint64_t layer,
                        std::uint64_t unit, double w_std) {
    const Eigen::Index n = w.size();
    for (Eigen::Index i = 0; i < n; i += 2) {
        const std::uint64_t h1 = mix_counter(seed, layer, unit, static_cast<std::uint64_t>(i), 0);
        const std::uint64_t h2 = mix_counter(seed, layer, unit, static_cast<std::uint64_t>(i), 1);
        const double u1 = (static_cast<double>(h1 >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        w(i) = w_std * r * std::cos(ang);
        if (i + 1 < n) w(i + 1) = w_std * r * std::sin(ang);
    }
}

void validate_spec(const FiniteNetSpec& spec) {
    if (spec.widths.empty()) throw std::invalid_argument("finite_forward: widths must be non-empty");
    for (int w : spec.widths)
        if (w < 1) throw std::invalid_argument("finite_forward: widths must be >= 1");
    if (!(spec.f > 0.0 && spec.f <= 0.5))
        throw std::invalid_argument("finite_forward: f must lie in (0, 0.5]");
    if (!(spec.sigma > 0.0)) throw std::invalid_argument("finite_forward: sigma must be > 0");
}

}  // namespace

double counter_normal(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                      std::uint64_t d) {
    // Box-Muller from two derived counters; u1 in (0, 1], u2 in [0, 1)
    const std::uint64_t h1 = mix_counter(seed, a, b, c, 2 * d);
    const std::uint64_t h2 = mix_counter(seed, a, b, c, 2 * d + 1);
    const double u1 = (static_cast<double>(h1 >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::MatrixXd finite_forward(const Eigen::MatrixXd& x, const FiniteNetSpec& spec) {
    validate_spec(spec);
    const double tau = tau_from_f(spec.f);
    Eigen::MatrixXd act = x;
    for (std::size_t layer = 0; layer < spec.widths.size(); ++layer) {
        const Eigen::Index fan_in = act.cols();
        const Eigen::Index n_out = spec.widths[layer];
        // first layer keeps the kernel normalization (no fan-in scaling)
        const double w_std =
            layer == 0 ? spec.sigma : spec.sigma / std::sqrt(static_cast<double>(fan_in));
        Eigen::MatrixXd pre(act.rows(), n_out);
        parallel_for(static_cast<std::size_t>(n_out), [&](std::size_t j) {
            thread_local Eigen::VectorXd w;
            w.resize(fan_in);
            fill_weight_column(w, spec.seed, layer, j, w_std);
            pre.col(static_cast<Eigen::Index>(j)).noalias() = act * w;
        });

        Eigen::MatrixXd next(act.rows(), n_out);
        if (spec.bias_mode == BiasMode::gaussian) {
            for (Eigen::Index r = 0; r < act.rows(); ++r) {
                const double sigma_h =
                    layer == 0 ? spec.sigma * act.row(r).norm()
                               : spec.sigma * act.row(r).norm() / std::sqrt(static_cast<double>(fan_in));
                const double bias = tau * sigma_h;
                next.row(r) = (pre.row(r).array() - bias).max(0.0);
            }
        } else {
            // exact per-input (1-f)-quantile: floor(f * n) strictly positive units;
            // the epsilon absorbs cases where f * n is integral but rounds down
            const Eigen::Index k =
                static_cast<Eigen::Index>(std::floor(spec.f * static_cast<double>(n_out) + 1e-9));
            std::vector<double> buf(static_cast<std::size_t>(n_out));
            for (Eigen::Index r = 0; r < act.rows(); ++r) {
                double bias;
                if (k <= 0) {
                    bias = pre.row(r).maxCoeff();  // nothing fires
                } else if (k >= n_out) {
                    bias = pre.row(r).minCoeff() - 1.0;
                } else {
                    for (Eigen::Index j = 0; j < n_out; ++j) buf[static_cast<std::size_t>(j)] = pre(r, j);
                    std::nth_element(buf.begin(), buf.begin() + k, buf.end(), std::greater<double>());
                    bias = buf[static_cast<std::size_t>(k)];  // (k+1)-th largest
                }
                next.row(r) = (pre.row(r).array() - bias).max(0.0);
            }
        }
        act = std::move(next);
    }
    return act;
}

MCEstimate mc_kernel_estimate(const Eigen::VectorXd& x_p, const Eigen::VectorXd& x_q,
                              const KernelConfig& config, int n_units, int n_trials,
                              std::uint64_t seed) {
    if (x_p.size() != x_q.size()) throw std::invalid_argument("mc_kernel_estimate: dimension mismatch");
    if (n_units < 1 || n_trials < 1)
        throw std::invalid_argument("mc_kernel_estimate: n_units and n_trials must be >= 1");
    const double bias_p = config.tau * config.sigma * x_p.norm();
    const double bias_q = config.tau * config.sigma * x_q.norm();
    const Eigen::Index dim = x_p.size();

    std::vector<double> trial_means(static_cast<std::size_t>(n_trials));
    parallel_for(static_cast<std::size_t>(n_trials), [&](std::size_t t) {
        double acc = 0.0;
        for (int j = 0; j < n_units; ++j) {
            double hp = 0.0, hq = 0.0;
            for (Eigen::Index i = 0; i < dim; ++i) {
                const double w =
                    config.sigma * counter_normal(seed, t, static_cast<std::uint64_t>(j),
                                                  static_cast<std::uint64_t>(i), 1);
                hp += w * x_p(i);
                hq += w * x_q(i);
            }
            acc += std::max(hp - bias_p, 0.0) * std::max(hq - bias_q, 0.0);
        }
        trial_means[t] = acc / static_cast<double>(n_units);
    });

    MCEstimate est;
    est.n_units = n_units;
    est.n_trials = n_trials;
    double mean = 0.0;
    for (double v : trial_means) mean += v;
    mean /= n_trials;
    est.mean = mean;
    if (n_trials > 1) {
        double ss = 0.0;
        for (double v : trial_means) ss += (v - mean) * (v - mean);
        est.std_error = std::sqrt(ss / (n_trials - 1)) / std::sqrt(static_cast<double>(n_trials));
    }
    return est;
}

Eigen::MatrixXd pseudo_inverse_readout(const Eigen::MatrixXd& h_train,
                                       const Eigen::MatrixXd& y_train,
                                       const Eigen::MatrixXd& h_test) {
    if (h_train.rows() != y_train.rows())
        throw std::invalid_argument("pseudo_inverse_readout: row count mismatch");
    if (h_test.cols() != h_train.cols())
        throw std::invalid_argument("pseudo_inverse_readout: feature dimension mismatch");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(h_train, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    return h_test * svd.solve(y_train);
}

}  // namespace sngp
