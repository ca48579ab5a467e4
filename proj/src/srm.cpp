#include "qbench/srm.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>

#include "qbench/benchmarks.hpp"
#include "qbench/operators.hpp"
#include "quad_util.hpp"

namespace qbench {

double srm_fidelity_qubit(double beta, double eta) {
    if (beta < 0.0 || eta < 0.0) {
        throw std::invalid_argument("srm_fidelity_qubit: beta, eta must be >= 0");
    }
    double b2 = beta + 2.0, b3 = beta + 3.0;
    double e3 = eta + 3.0;
    double root = std::sqrt(eta + 1.0);
    return (eta + 2.0) / e3 * (beta + 1.0) / b3 +
           (1.0 + root) * (1.0 + root) / e3 * (beta + 1.0) / (b2 * b3) +
           4.0 / (e3 * b3 * b2);
}

namespace {

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    int guard = 0;
    while (b - a > std::max(tol, 8.0 * std::abs(b) * std::numeric_limits<double>::epsilon())) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
        if (++guard > 10000) {
            throw std::runtime_error("srm_optimize: golden-section did not converge");
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

SrmResult srm_optimize(double beta) {
    if (beta < 0.0) {
        throw std::invalid_argument("srm_optimize: beta must be >= 0");
    }
    SrmResult out;
    out.beta = beta;
    out.benchmark = (beta + 2.0) / (beta + 3.0);

    // Stationarity of F in u = sqrt(eta+1):
    //   (beta+1) u^2 - (beta^2+4beta-1) u - 2(beta+1) = 0,
    // whose positive root gives the optimum; the discriminant is
    // beta^4 + 8 beta^3 + 22 beta^2 + 8 beta + 9.
    double radicand = (((beta + 8.0) * beta + 22.0) * beta + 8.0) * beta + 9.0;
    double root = std::sqrt(radicand);
    double u_opt = (beta * beta + 4.0 * beta - 1.0 + root) / (2.0 * (beta + 1.0));
    out.eta_opt = u_opt * u_opt - 1.0;
    out.fidelity_opt = srm_fidelity_qubit(beta, out.eta_opt);
    out.gap = out.benchmark - out.fidelity_opt;

    // Independent 1-D maximization; the closed form must reproduce it.  The
    // optimum sits near (beta+3)^2 - 1, so the bracket grows quadratically.
    double hi = (beta + 5.0) * (beta + 5.0) + 100.0;
    double numeric_eta = golden_section_max(
        [beta](double eta) { return srm_fidelity_qubit(beta, eta); }, 0.0, hi, 1e-10);
    double numeric_f = srm_fidelity_qubit(beta, numeric_eta);
    if (std::abs(numeric_f - out.fidelity_opt) > 1e-9) {
        throw std::runtime_error("srm_optimize: closed-form optimum disagrees with numeric search");
    }
    return out;
}

SrmUniformResult srm_uniform_optimality(const StateFamily& family, int N, int M) {
    const FamilyTag tag = family.input.tag;
    if (tag != FamilyTag::Qudit && tag != FamilyTag::SpinCoherent) {
        throw std::invalid_argument(
            "srm_uniform_optimality: uniform prior needs a compact family (qudit or spin)");
    }
    // F_srm = d_phi int dg |<phi|phi_g>|^{2N} |<psi|psi_g>|^{2M}: the double
    // Haar integral collapses to a single one by group invariance, which is
    // exactly the beta = 0 CFT ratio evaluated by quadrature.
    EnsembleSpec spec = EnsembleSpec::make(family, N, M, 0.0);
    QuadratureConfig cfg;
    cfg.nodes_per_dim = 64;
    auto numeric = cft_numeric(spec, cfg);
    SrmUniformResult out;
    out.f_srm = numeric.value.fidelity_threshold;
    out.f_classical = cft_closed_form(spec).fidelity_threshold;
    out.gap = out.f_srm - out.f_classical;
    return out;
}

SrmPovmQubit::SrmPovmQubit(double eta, int N) : eta_(eta), N_(N) {
    if (eta < 0.0 || N < 1) {
        throw std::invalid_argument("srm_povm_qubit: requires eta >= 0 and N >= 1");
    }
    auto rho = build_rho_qudit(N, 2, eta);
    inv_sqrt_rho_.resize(static_cast<size_t>(N + 1));
    for (int k = 0; k <= N; ++k) {
        inv_sqrt_rho_[static_cast<size_t>(k)] = 1.0 / std::sqrt(rho.mat(k, k).real());
    }
}

double SrmPovmQubit::rescaled_overlap_sq(const BlochAngles& ghat, const BlochAngles& g) const {
    // Symmetric-basis amplitudes of |psi>^N are sqrt(C(N,k)) c^(N-k) s^k e^{ik phi}
    // with c = cos(theta/2), s = sin(theta/2); partitions(N,2) orders k = 0..N.
    std::complex<double> amp = 0.0;
    double cg = std::cos(0.5 * g.theta), sg = std::sin(0.5 * g.theta);
    double ch = std::cos(0.5 * ghat.theta), sh = std::sin(0.5 * ghat.theta);
    for (int k = 0; k <= N_; ++k) {
        double binom = std::exp(0.5 * (log_gamma(N_ + 1.0) - log_gamma(k + 1.0) -
                                       log_gamma(N_ - k + 1.0)));
        double mg = binom * std::pow(cg, N_ - k) * std::pow(sg, k);
        double mh = binom * std::pow(ch, N_ - k) * std::pow(sh, k);
        amp += mg * mh * inv_sqrt_rho_[static_cast<size_t>(k)] *
               std::exp(std::complex<double>(0.0, k * (ghat.phi - g.phi)));
    }
    return std::norm(amp);
}

double SrmPovmQubit::outcome_density(const BlochAngles& ghat, const BlochAngles& g) const {
    PriorSpec prior{FamilyMember::spin(0.5), eta_, 0.0};
    return prior_density(prior, GroupPoint{ghat}) * rescaled_overlap_sq(ghat, g);
}

SrmPovmQubit srm_povm_qubit(double eta, int N) { return SrmPovmQubit(eta, N); }

std::function<double(const GroupPoint&)> srm_expected_fidelity_fn(double eta, int inner_nodes) {
    auto povm = std::make_shared<SrmPovmQubit>(eta, 1);
    auto grid = std::make_shared<std::vector<std::pair<BlochAngles, double>>>();
    // Outcome grid: graded GL in theta_hat (the density vanishes with a
    // fractional power at theta_hat = pi for non-integer eta), uniform in
    // phi_hat (the integrand holds at most three harmonics).
    for (const auto& t : detail::composite_gl_graded_right(0.0, M_PI, inner_nodes / 4 + 6)) {
        for (const auto& p : detail::periodic_nodes(8)) {
            grid->push_back({BlochAngles{t.x, p.x}, t.w * p.w});
        }
    }
    PriorSpec outcome_prior{FamilyMember::spin(0.5), eta, 0.0};
    auto cache = std::make_shared<std::map<double, double>>();
    return [povm, grid, outcome_prior, cache](const GroupPoint& g) {
        const auto& gb = std::get<BlochAngles>(g);
        // The inner integral is invariant under rotating g about z.
        if (auto it = cache->find(gb.theta); it != cache->end()) {
            return it->second;
        }
        BlochAngles g0{gb.theta, 0.0};
        double acc = 0.0;
        double cg = std::cos(0.5 * g0.theta), sg = std::sin(0.5 * g0.theta);
        for (const auto& [ghat, w] : *grid) {
            double dens = prior_density(outcome_prior, GroupPoint{ghat}) *
                          povm->rescaled_overlap_sq(ghat, g0);
            double ch = std::cos(0.5 * ghat.theta), sh = std::sin(0.5 * ghat.theta);
            std::complex<double> ov =
                cg * ch + sg * sh * std::exp(std::complex<double>(0.0, ghat.phi));
            acc += w * dens * std::norm(ov);
        }
        (*cache)[gb.theta] = acc;
        return acc;
    };
}

}  // namespace qbench
