#pragma once

#include <Eigen/Core>
#include <filesystem>

namespace sngp {

/// Self-consistent learning-curve quantities for one spectrum at a given
/// training-set size and ridge.
struct TheoryResult {
    double kappa = 0.0;
    double gamma = 0.0;
    Eigen::VectorXd e_rho; // modal error factors, one per mode
    double e_g = 0.0;      // filled by generalization_error
    int p_train = 0;
    double ridge = 0.0;
};

/// Root of kappa = ridge + sum_rho kappa eta_rho / (kappa + P eta_rho).
/// ridge = 0 with P >= N (N = #positive eta) returns 0 exactly; otherwise the
/// unique positive root, found by bracketed Brent iteration.
double solve_kappa(const Eigen::VectorXd& eta, int p_train, double ridge);

/// kappa, gamma = sum_rho P eta^2 / (kappa + P eta)^2 and the modal errors
/// E_rho = (1/(1-gamma)) kappa^2 / (kappa + P eta_rho)^2. In the kappa = 0
/// regime every E_rho is 0. Throws if gamma >= 1 outside that regime.
TheoryResult modal_errors(const Eigen::VectorXd& eta, int p_train, double ridge);

/// E_g = sum_rho v_bar_sq_rho * E_rho; also stores it in tr.e_g.
double generalization_error(TheoryResult& tr, const Eigen::VectorXd& v_bar_sq);

/// Analytic gradient dE_g / d eta_i. Derived by implicit differentiation of
/// the self-consistent system; validated against central finite differences.
Eigen::VectorXd grad_eg(const Eigen::VectorXd& eta, const Eigen::VectorXd& v_bar_sq,
                        int p_train, double ridge);

/// First-order modal-error response to an eigenvalue perturbation of a flat
/// spectrum: -2 (1 - alpha) alpha (1/eta) (d_eta - mean(d_eta)). Exact
/// directional derivative at the flat point for ridge = 0.
Eigen::VectorXd perturb_modal(const Eigen::VectorXd& d_eta, double alpha, double eta_flat);

/// E_g with the uniform-eigenvector mode split out: kappa and gamma are
/// solved over the remaining spectrum, and the split mode contributes
/// ((1+gamma)/(1-gamma)) kappa^2 v0_sq / (kappa + 2 P eta0)^2. noise_var adds
/// the P sigma^2 eta^2 term to each remaining mode.
double eg_with_uniform_mode(const Eigen::VectorXd& eta, double eta0,
                            const Eigen::VectorXd& v_bar_sq, double v0_sq, int p_train,
                            double ridge, double noise_var = 0.0);

/// CSV with columns rho, eta, v_bar_sq, e_rho and footer lines kappa, gamma, e_g.
void write_theory_csv(const Eigen::VectorXd& eta, const Eigen::VectorXd& v_bar_sq,
                      const TheoryResult& tr, const std::filesystem::path& path);

}  // namespace sngp
