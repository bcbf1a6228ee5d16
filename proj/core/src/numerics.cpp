#include "sngp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sngp {

double erf_inv(double y) {
    if (!(y > -1.0 && y < 1.0)) throw std::domain_error("erf_inv: argument must lie in (-1, 1)");
    if (y == 0.0) return 0.0;

    // Winitzki-style seed, good to ~1e-2 everywhere.
    const double a = 0.147;
    const double ln1my2 = std::log(1.0 - y * y);
    const double t = 2.0 / (std::numbers::pi * a) + 0.5 * ln1my2;
    double x = std::copysign(std::sqrt(std::sqrt(t * t - ln1my2 / a) - t), y);

    // Newton on erf(x) - y; quadratic convergence, 3 steps reach ~1e-16.
    const double two_over_sqrt_pi = 2.0 / std::sqrt(std::numbers::pi);
    for (int it = 0; it < 4; ++it) {
        const double r = std::erf(x) - y;
        const double d = two_over_sqrt_pi * std::exp(-x * x);
        const double step = r / d;
        x -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

namespace detail {

GaussLegendreRule::GaussLegendreRule(int order) {
    nodes.resize(order);
    weights.resize(order);
    // Newton on P_n with the Chebyshev-angle seed; symmetric pairs filled together.
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
}

const GaussLegendreRule& gl32() {
    static const GaussLegendreRule rule(32);
    return rule;
}

}  // namespace detail

std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw std::invalid_argument("pchip_slopes: need matching arrays of size >= 2");
    std::vector<double> h(n - 1), delta(n - 1), d(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        if (!(h[i] > 0.0)) throw std::invalid_argument("pchip_slopes: x must be strictly increasing");
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;  // local extremum or flat
        } else {
            // weighted harmonic mean of adjacent secants (Fritsch-Carlson)
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

double pchip_eval(std::span<const double> x, std::span<const double> y,
                  std::span<const double> slope, double xq) {
    const std::size_t n = x.size();
    xq = std::clamp(xq, x.front(), x.back());
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    i = std::min(i, n - 2);
    const double h = x[i + 1] - x[i];
    const double t = (xq - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y[i] + h10 * h * slope[i] + h01 * y[i + 1] + h11 * h * slope[i + 1];
}

}  // namespace sngp
