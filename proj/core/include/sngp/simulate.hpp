#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "sngp/kernel.hpp"

namespace sngp {

enum class BiasMode {
    quantile, // threshold at the per-input (1-f)-quantile of preactivations
    gaussian, // b = tau * sigma_h from the running representation norm
};

/// Finite sparse random network. Weights are counter-based functions of
/// (seed, layer, unit, fan-in index), so parallel evaluation is bit-identical
/// to serial. The first layer draws N(0, sigma^2) per component and deeper
/// layers N(0, sigma^2 / n_{l-1}), matching the kernel normalization in which
/// the layer-0 Gram is the raw dot product.
struct FiniteNetSpec {
    std::vector<int> widths;  // hidden-layer widths, one per layer
    double f = 0.5;
    double sigma = 1.4142135623730951;
    std::uint64_t seed = 0;
    BiasMode bias_mode = BiasMode::gaussian;
};

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0; // sample std across trials / sqrt(n_trials)
    int n_units = 0;
    int n_trials = 0;
};

/// Deterministic standard normal for a (seed, a, b, c, d) counter tuple.
double counter_normal(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                      std::uint64_t d);

/// Forward pass of the finite network; rows of x are inputs. Returns the
/// final-layer activations (batch x widths.back()).
Eigen::MatrixXd finite_forward(const Eigen::MatrixXd& x, const FiniteNetSpec& spec);

/// Monte-Carlo estimate of the single-layer kernel: per trial, the average of
/// x_i^(p,1) x_i^(q,1) over n_units hidden units with shared weights
/// (gaussian bias mode). Mean and standard error across trials.
MCEstimate mc_kernel_estimate(const Eigen::VectorXd& x_p, const Eigen::VectorXd& x_q,
                              const KernelConfig& config, int n_units, int n_trials,
                              std::uint64_t seed);

/// Least-squares readout W = pinv(h_train) Y, evaluated at h_test.
Eigen::MatrixXd pseudo_inverse_readout(const Eigen::MatrixXd& h_train,
                                       const Eigen::MatrixXd& y_train,
                                       const Eigen::MatrixXd& h_test);

}  // namespace sngp
