#pragma once

#include <functional>
#include <vector>

#include "qbench/ensembles.hpp"
#include "qbench/oracle.hpp"

namespace qbench {

// Teleportation fidelity of the square-root measurement with width parameter
// eta against the qubit ensemble of inverse width beta (closed form).
double srm_fidelity_qubit(double beta, double eta);

struct SrmResult {
    double beta = 0.0;
    double eta_opt = 0.0;
    double fidelity_opt = 0.0;
    double benchmark = 0.0;  // (beta+2)/(beta+3)
    double gap = 0.0;        // benchmark - fidelity_opt
};

// Closed-form optimum over eta, cross-checked against a golden-section
// maximization of srm_fidelity_qubit (the two must agree to 1e-9).
SrmResult srm_optimize(double beta);

// Deterministic square-root-measurement strategy under the uniform prior,
// evaluated by quadrature; Appendix-grade identity F_srm == F_c(beta=0) for
// compact families.
struct SrmUniformResult {
    double f_srm = 0.0;
    double f_classical = 0.0;
    double gap = 0.0;
};
SrmUniformResult srm_uniform_optimality(const StateFamily& family, int N, int M);

// Outcome density of the eta-square-root measurement on N qubit copies:
// p(ghat | g) = p_eta(ghat) |<psi_g|^N rho_eta^{-1/2} |psi_ghat>^N|^2,
// a probability density over (theta_hat, phi_hat).
class SrmPovmQubit {
  public:
    SrmPovmQubit(double eta, int N);
    double eta() const { return eta_; }
    int copies() const { return N_; }
    // Density with respect to dtheta dphi of the outcome point.
    double outcome_density(const BlochAngles& ghat, const BlochAngles& g) const;
    // |<psi_g|^N rho^{-1/2} |psi_ghat>^N|^2 without the prior factor.
    double rescaled_overlap_sq(const BlochAngles& ghat, const BlochAngles& g) const;

  private:
    double eta_;
    int N_;
    std::vector<double> inv_sqrt_rho_;  // symmetric-basis eigenvalues, k = 0..N
};
SrmPovmQubit srm_povm_qubit(double eta, int N);

// Expected conditional fidelity of the SRM strategy at a given input point,
// i.e. the inner integral over outcomes (2D quadrature); plugs into
// oracle::figure_of_merit with acceptance identically one.
std::function<double(const GroupPoint&)> srm_expected_fidelity_fn(double eta, int inner_nodes = 48);

}  // namespace qbench
