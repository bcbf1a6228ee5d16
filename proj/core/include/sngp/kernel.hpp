#pragma once

#include <Eigen/Core>
#include <optional>

namespace sngp {

/// Threshold giving a standard-normal upper-tail mass of exactly f,
/// tau = sqrt(2) * erf_inv(1 - 2f). Requires 0 < f <= 0.5.
double tau_from_f(double f);

/// The 1D integral I(theta | tau) over phi0 in [0, (pi - theta)/2].
/// Dispatches to the closed form ((pi - theta) cos theta + sin theta)/2
/// when tau < 1e-14; otherwise adaptive Gauss-Legendre to ~1e-11 abs.
double integral_I(double theta, double tau);

/// Quadrature route of I(theta | tau) with no closed-form dispatch. Exposed so
/// the two routes can be cross-checked against each other.
double integral_I_quadrature(double theta, double tau);

/// Weight scale that makes representation norms layer-invariant:
/// sigma* = sqrt(pi / (I(0|tau) - tau sqrt(2 pi))).
double sigma_star(double tau);

/// Normalized kernel angular profile at f = 0.5:
/// (sigma^2 / 2 pi) ((pi - theta) cos theta + sin theta).
double arccos_kernel_closed(double theta, double sigma = 1.4142135623730951);

/// Cosine recursion c' = (sigma^2 / 2 pi)(2 I(arccos c | tau) - tau sqrt(2 pi)(1 + c)).
/// Inputs within 1e-12 of [-1, 1] are clamped; beyond that it throws.
double cosine_map(double c, double tau, double sigma);

/// Everything a kernel evaluation needs: sparsity, derived threshold, weight
/// scale (defaults to sigma*(tau)), depth, ridge and constant offset.
struct KernelConfig {
    double f;
    double tau;
    double sigma;
    int depth = 1;
    double ridge = 0.0;
    double offset = 0.0;

    static KernelConfig make(double f, int depth = 1, double ridge = 0.0, double offset = 0.0,
                             std::optional<double> sigma = std::nullopt);
};

/// Single-hidden-layer kernel on raw inputs:
/// (sigma^2 / 2 pi) |x_p||x_q| (2 I(theta|tau) - tau sqrt(2 pi)(1 + cos theta)) + offset.
double kernel_single(const Eigen::Ref<const Eigen::VectorXd>& x_p,
                     const Eigen::Ref<const Eigen::VectorXd>& x_q, const KernelConfig& config);

}  // namespace sngp
