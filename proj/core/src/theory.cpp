#include "sngp/theory.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sngp/numerics.hpp"

namespace sngp {

namespace {
constexpr double kKappaRtol = 1e-13;

void check_eta(const Eigen::VectorXd& eta) {
    if (eta.size() == 0) throw std::invalid_argument("theory: empty spectrum");
    double total = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        if (eta(i) < 0.0) throw std::invalid_argument("theory: negative eigenvalue");
        total += eta(i);
    }
    if (!(total > 0.0)) throw std::invalid_argument("theory: all-zero spectrum");
}

Eigen::Index positive_count(const Eigen::VectorXd& eta) {
    Eigen::Index n = 0;
    for (Eigen::Index i = 0; i < eta.size(); ++i)
        if (eta(i) > 0.0) ++n;
    return n;
}
}  // namespace

double solve_kappa(const Eigen::VectorXd& eta, int p_train, double ridge) {
    check_eta(eta);
    if (p_train < 1) throw std::invalid_argument("solve_kappa: p_train must be >= 1");
    if (ridge < 0.0) throw std::invalid_argument("solve_kappa: ridge must be >= 0");
    const double p = static_cast<double>(p_train);
    const double sum_eta = eta.sum();

    if (ridge == 0.0) {
        const Eigen::Index n_pos = positive_count(eta);
        if (p_train >= n_pos) return 0.0;
        // divided form: sum eta / (kappa + P eta) = 1, strictly decreasing in kappa
        auto g = [&](double kappa) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < eta.size(); ++i)
                if (eta(i) > 0.0) acc += eta(i) / (kappa + p * eta(i));
            return acc - 1.0;
        };
        double lo = 1e-300;
        double hi = sum_eta;  // g(sum_eta) < 0 always
        if (g(lo) <= 0.0) return 0.0;
        const double kappa = brent_root(g, lo, hi, 0.0, kKappaRtol, 300);
        return kappa;
    }

    auto fn = [&](double kappa) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < eta.size(); ++i)
            acc += kappa * eta(i) / (kappa + p * eta(i));
        return kappa - ridge - acc;
    };
    double lo = ridge;
    double hi = ridge + sum_eta;
    if (fn(lo) >= 0.0) return lo;
    return brent_root(fn, lo, hi, 0.0, kKappaRtol, 300);
}

TheoryResult modal_errors(const Eigen::VectorXd& eta, int p_train, double ridge) {
    TheoryResult tr;
    tr.p_train = p_train;
    tr.ridge = ridge;
    tr.kappa = solve_kappa(eta, p_train, ridge);
    const double p = static_cast<double>(p_train);

    if (tr.kappa == 0.0) {
        // interpolation regime: every represented mode is learned exactly
        tr.gamma = static_cast<double>(positive_count(eta)) / p;
        tr.e_rho = Eigen::VectorXd::Zero(eta.size());
        return tr;
    }

    double gamma = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        const double d = tr.kappa + p * eta(i);
        gamma += p * eta(i) * eta(i) / (d * d);
    }
    tr.gamma = gamma;
    if (gamma >= 1.0) {
        std::ostringstream msg;
        msg << "modal_errors: gamma = " << gamma << " >= 1, theory out of domain";
        throw std::runtime_error(msg.str());
    }
    tr.e_rho.resize(eta.size());
    const double k2 = tr.kappa * tr.kappa;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        const double d = tr.kappa + p * eta(i);
        tr.e_rho(i) = k2 / ((1.0 - gamma) * d * d);
    }
    return tr;
}

double generalization_error(TheoryResult& tr, const Eigen::VectorXd& v_bar_sq) {
    if (v_bar_sq.size() != tr.e_rho.size())
        throw std::invalid_argument("generalization_error: length mismatch");
    tr.e_g = v_bar_sq.dot(tr.e_rho);
    return tr.e_g;
}

Eigen::VectorXd grad_eg(const Eigen::VectorXd& eta, const Eigen::VectorXd& v_bar_sq, int p_train,
                        double ridge) {
    if (v_bar_sq.size() != eta.size()) throw std::invalid_argument("grad_eg: length mismatch");
    TheoryResult tr = modal_errors(eta, p_train, ridge);
    if (tr.kappa == 0.0)
        throw std::runtime_error("grad_eg: gradient undefined in the zero-error regime");
    const double eg = generalization_error(tr, v_bar_sq);
    const double p = static_cast<double>(p_train);
    const double kappa = tr.kappa;
    const double one_m_g = 1.0 - tr.gamma;

    // Implicit differentiation of the self-consistent system gives
    //   dEg/deta_i = (2 P kappa / (1-gamma)) (eta_i Eg - vbar_i^2 kappa) / (kappa + P eta_i)^3
    //              + (2 P kappa^2 / (1-gamma)^2) (B kappa - C Eg) / (kappa + P eta_i)^2
    // with B = sum vbar^2 eta / (kappa + P eta)^3 and C = sum eta^2 / (kappa + P eta)^3.
    double b_sum = 0.0, c_sum = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        const double d = kappa + p * eta(i);
        const double d3 = d * d * d;
        b_sum += v_bar_sq(i) * eta(i) / d3;
        c_sum += eta(i) * eta(i) / d3;
    }
    Eigen::VectorXd grad(eta.size());
    const double t2_coef = 2.0 * p * kappa * kappa * (b_sum * kappa - c_sum * eg) / (one_m_g * one_m_g);
    const double t1_coef = 2.0 * p * kappa / one_m_g;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        const double d = kappa + p * eta(i);
        grad(i) = t1_coef * (eta(i) * eg - v_bar_sq(i) * kappa) / (d * d * d) + t2_coef / (d * d);
    }
    return grad;
}

Eigen::VectorXd perturb_modal(const Eigen::VectorXd& d_eta, double alpha, double eta_flat) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("perturb_modal: alpha must lie in (0, 1)");
    if (!(eta_flat > 0.0)) throw std::domain_error("perturb_modal: eta_flat must be > 0");
    if (d_eta.size() == 0) throw std::invalid_argument("perturb_modal: empty perturbation");
    const double mean = d_eta.mean();
    return (-2.0 * (1.0 - alpha) * alpha / eta_flat) * (d_eta.array() - mean).matrix();
}

double eg_with_uniform_mode(const Eigen::VectorXd& eta, double eta0,
                            const Eigen::VectorXd& v_bar_sq, double v0_sq, int p_train,
                            double ridge, double noise_var) {
    if (v_bar_sq.size() != eta.size())
        throw std::invalid_argument("eg_with_uniform_mode: length mismatch");
    if (eta0 < 0.0) throw std::invalid_argument("eg_with_uniform_mode: eta0 must be >= 0");
    TheoryResult tr = modal_errors(eta, p_train, ridge);
    const double p = static_cast<double>(p_train);
    double base = 0.0;
    if (tr.kappa > 0.0) {
        for (Eigen::Index i = 0; i < eta.size(); ++i) {
            const double d = tr.kappa + p * eta(i);
            base += (tr.kappa * tr.kappa * v_bar_sq(i) + p * noise_var * eta(i) * eta(i)) / (d * d);
        }
        base /= (1.0 - tr.gamma);
    }
    const double du = tr.kappa + 2.0 * p * eta0;
    const double uniform_term =
        (v0_sq == 0.0 || du == 0.0 || tr.kappa == 0.0)
            ? 0.0
            : (1.0 + tr.gamma) / (1.0 - tr.gamma) * tr.kappa * tr.kappa * v0_sq / (du * du);
    return base + uniform_term;
}

void write_theory_csv(const Eigen::VectorXd& eta, const Eigen::VectorXd& v_bar_sq,
                      const TheoryResult& tr, const std::filesystem::path& path) {
    if (eta.size() != v_bar_sq.size() || eta.size() != tr.e_rho.size())
        throw std::invalid_argument("write_theory_csv: length mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_theory_csv: cannot open " + path.string());
    out << "rho,eta,v_bar_sq,e_rho\n";
    char buf[128];
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n", static_cast<long long>(i),
                      eta(i), v_bar_sq(i), tr.e_rho(i));
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "kappa,%.17g\ngamma,%.17g\ne_g,%.17g\n", tr.kappa, tr.gamma,
                  tr.e_g);
    out << buf;
    if (!out) throw std::runtime_error("write_theory_csv: write failed for " + path.string());
}

}  // namespace sngp
