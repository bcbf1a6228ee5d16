#include "sngp/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sngp/numerics.hpp"

namespace sngp {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310002;  // sqrt(2 pi)
constexpr double kTauZeroEps = 1e-14;
constexpr double kCosineClampBand = 1e-12;

double clamp_cosine(double c) {
    if (c > 1.0) {
        if (c > 1.0 + kCosineClampBand) throw std::domain_error("cosine outside [-1, 1] beyond clamp band");
        return 1.0;
    }
    if (c < -1.0) {
        if (c < -1.0 - kCosineClampBand) throw std::domain_error("cosine outside [-1, 1] beyond clamp band");
        return -1.0;
    }
    return c;
}
}  // namespace

double tau_from_f(double f) {
    if (!(f > 0.0 && f <= 0.5)) throw std::domain_error("tau_from_f: f must lie in (0, 0.5]");
    if (f == 0.5) return 0.0;
    return std::numbers::sqrt2 * erf_inv(1.0 - 2.0 * f);
}

double integral_I_quadrature(double theta, double tau) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw std::domain_error("integral_I: theta must lie in [0, pi]");
    if (tau < 0.0) throw std::domain_error("integral_I: tau must be >= 0");
    const double hi = 0.5 * (std::numbers::pi - theta);
    if (hi <= 0.0) return 0.0;
    const double sqrt_pi_over_2 = std::sqrt(std::numbers::pi / 2.0);
    auto integrand = [theta, tau, sqrt_pi_over_2](double phi) {
        const double s = std::sin(phi);
        const double sp = std::sin(phi + theta);
        double val = std::exp(-tau * tau / (2.0 * s * s)) * 2.0 * sp * s;
        if (tau > 0.0)
            val += tau * (sp + s) * sqrt_pi_over_2 * std::erf(tau / (std::numbers::sqrt2 * s));
        return val;
    };
    return integrate_gl(integrand, 0.0, hi, 1e-11);
}

double integral_I(double theta, double tau) {
    if (tau < kTauZeroEps) {
        if (!(theta >= 0.0 && theta <= std::numbers::pi))
            throw std::domain_error("integral_I: theta must lie in [0, pi]");
        return 0.5 * ((std::numbers::pi - theta) * std::cos(theta) + std::sin(theta));
    }
    return integral_I_quadrature(theta, tau);
}

double sigma_star(double tau) {
    const double denom = integral_I(0.0, tau) - tau * kSqrt2Pi;
    if (!(denom > 0.0)) throw std::runtime_error("sigma_star: non-positive normalization denominator");
    return std::sqrt(std::numbers::pi / denom);
}

double arccos_kernel_closed(double theta, double sigma) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw std::domain_error("arccos_kernel_closed: theta must lie in [0, pi]");
    return sigma * sigma / (2.0 * std::numbers::pi) *
           ((std::numbers::pi - theta) * std::cos(theta) + std::sin(theta));
}

double cosine_map(double c, double tau, double sigma) {
    c = clamp_cosine(c);
    const double theta = std::acos(c);
    return sigma * sigma / (2.0 * std::numbers::pi) *
           (2.0 * integral_I(theta, tau) - tau * kSqrt2Pi * (1.0 + c));
}

KernelConfig KernelConfig::make(double f, int depth, double ridge, double offset,
                                std::optional<double> sigma) {
    if (depth < 1) throw std::domain_error("KernelConfig: depth must be >= 1");
    if (ridge < 0.0) throw std::domain_error("KernelConfig: ridge must be >= 0");
    if (offset < 0.0) throw std::domain_error("KernelConfig: offset must be >= 0");
    KernelConfig cfg;
    cfg.f = f;
    cfg.tau = tau_from_f(f);
    cfg.sigma = sigma ? *sigma : sigma_star(cfg.tau);
    if (!(cfg.sigma > 0.0)) throw std::domain_error("KernelConfig: sigma must be > 0");
    cfg.depth = depth;
    cfg.ridge = ridge;
    cfg.offset = offset;
    return cfg;
}

double kernel_single(const Eigen::Ref<const Eigen::VectorXd>& x_p,
                     const Eigen::Ref<const Eigen::VectorXd>& x_q, const KernelConfig& config) {
    const double np = x_p.norm();
    const double nq = x_q.norm();
    if (!(np > 0.0) || !(nq > 0.0)) throw std::domain_error("kernel_single: zero-norm input");
    if (!x_p.allFinite() || !x_q.allFinite()) throw std::domain_error("kernel_single: non-finite input");
    const double c = clamp_cosine(x_p.dot(x_q) / (np * nq));
    const double theta = std::acos(c);
    return config.sigma * config.sigma / (2.0 * std::numbers::pi) * np * nq *
               (2.0 * integral_I(theta, config.tau) - config.tau * kSqrt2Pi * (1.0 + c)) +
           config.offset;
}

}  // namespace sngp
