#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace sngp {

/// Inverse error function on (-1, 1). Rational initial estimate refined by
/// Newton iterations on std::erf until the residual is below 1e-15 (or
/// machine-limited).
double erf_inv(double y);

namespace detail {
/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    explicit GaussLegendreRule(int order);
};

const GaussLegendreRule& gl32();
}  // namespace detail

/// Composite Gauss-Legendre quadrature of f on [a, b]. The panel count is
/// doubled until two successive refinements agree to abs_tol; throws
/// std::runtime_error if that never happens within the panel cap.
template <class F>
double integrate_gl(F&& f, double a, double b, double abs_tol) {
    if (!(b > a)) return 0.0;
    const auto& rule = detail::gl32();
    auto pass = [&](int panels) {
        const double h = (b - a) / panels;
        double total = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (p + 0.5) * h;
            double acc = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
            total += 0.5 * h * acc;
        }
        return total;
    };
    double prev = pass(1);
    for (int panels = 2; panels <= 1024; panels *= 2) {
        const double cur = pass(panels);
        if (std::abs(cur - prev) <= abs_tol) return cur;
        prev = cur;
    }
    throw std::runtime_error("integrate_gl: quadrature did not converge to requested tolerance");
}

/// Bracketed root finding (Brent). f(lo) and f(hi) must have opposite signs.
template <class F>
double brent_root(F&& f, double lo, double hi, double xtol = 0.0, double rtol = 1e-14,
                  int max_iter = 200) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("brent_root: endpoints do not bracket a root");
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa; d = b - a; e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * rtol * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) return b;
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = m; e = m;  // bisection
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {  // inverse quadratic
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
    }
    throw std::runtime_error("brent_root: no convergence");
}

/// Monotonicity-preserving cubic (Fritsch-Carlson) node slopes for strictly
/// increasing x. Data need not be monotone; where it is, the interpolant is.
std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y);

/// Evaluate the pchip interpolant at xq (clamped to [x.front(), x.back()]).
double pchip_eval(std::span<const double> x, std::span<const double> y,
                  std::span<const double> slope, double xq);

}  // namespace sngp
