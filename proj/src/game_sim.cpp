#include "qbench/game_sim.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "qbench/srm.hpp"

namespace qbench {

Strategy optimal_mp_strategy(const EnsembleSpec& spec) {
    const FamilyMember in = spec.family.input;
    const FamilyMember target = spec.family.target;
    const int N = spec.N, M = spec.M;
    Strategy s;
    s.name = "optimal-mp";
    s.acceptance = [in, N](const GroupPoint& g) { return std::pow(overlap_sq(in, g), N); };
    s.conditional_fidelity = [target, M](const GroupPoint& g, Rng&) {
        return std::pow(overlap_sq(target, g), M);
    };
    return s;
}

Strategy srm_strategy_qubit(double eta) {
    auto povm = std::make_shared<SrmPovmQubit>(eta, 1);
    Strategy s;
    s.name = "srm";
    s.acceptance = [](const GroupPoint&) { return 1.0; };
    s.conditional_fidelity = [povm, eta](const GroupPoint& g, Rng& rng) {
        const auto& gb = std::get<BlochAngles>(g);
        // Rejection sampling of the outcome: propose ghat from the eta prior
        // and accept with rescaled_overlap_sq / (eta + 2); completeness makes
        // the acceptance rate exactly 1 / (eta + 2).
        const double bound = eta + 2.0;
        for (;;) {
            double w = std::pow(rng.uniform(), 1.0 / (eta + 1.0));
            double theta_hat = std::acos(2.0 * w - 1.0);
            double phi_hat = rng.uniform(0.0, 2.0 * M_PI);
            BlochAngles ghat{theta_hat, phi_hat};
            if (rng.uniform() * bound <= povm->rescaled_overlap_sq(ghat, gb)) {
                double cg = std::cos(0.5 * gb.theta), sg = std::sin(0.5 * gb.theta);
                double ch = std::cos(0.5 * theta_hat), sh = std::sin(0.5 * theta_hat);
                std::complex<double> ov =
                    cg * ch + sg * sh * std::exp(std::complex<double>(0.0, phi_hat - gb.phi));
                return std::norm(ov);
            }
        }
    };
    return s;
}

TrialBatch run_game(const EnsembleSpec& spec, const Strategy& strategy, long trials,
                    std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("run_game: trials must be >= 1");
    }
    TrialBatch batch;
    batch.seed = seed;
    batch.trials = trials;

    // Separate streams for the prior, the acceptance coin, the strategy's
    // internal randomness, and the verifier's binary test.
    Rng prior_rng = Rng::stream(seed, 0);
    Rng accept_rng = Rng::stream(seed, 1);
    Rng strat_rng = Rng::stream(seed, 2);
    Rng victor_rng = Rng::stream(seed, 3);

    auto points = sample_prior(spec.prior, prior_rng.next_u64(), static_cast<int>(trials));
    for (const GroupPoint& g : points) {
        double acc = strategy.acceptance(g);
        if (acc < 0.0 || acc > 1.0 + 1e-12) {
            throw std::invalid_argument("run_game: acceptance outside [0,1]");
        }
        if (!accept_rng.bernoulli(acc)) {
            continue;
        }
        batch.successes += 1;
        double fid = strategy.conditional_fidelity(g, strat_rng);
        if (fid < -1e-12 || fid > 1.0 + 1e-12) {
            throw std::invalid_argument("run_game: conditional fidelity outside [0,1]");
        }
        batch.fidelity_sum += fid;
        batch.fidelity_sq_sum += fid * fid;
        // Victor's two-outcome test {T, 1-T} passes with probability equal to
        // the fidelity when T projects on the target state.
        if (victor_rng.bernoulli(fid)) {
            batch.test_passes += 1;
        }
    }

    batch.success_rate = static_cast<double>(batch.successes) / static_cast<double>(trials);
    batch.stderr_success =
        std::sqrt(std::max(batch.success_rate * (1.0 - batch.success_rate), 0.0) /
                  static_cast<double>(trials));
    if (batch.successes > 0) {
        double n = static_cast<double>(batch.successes);
        batch.conditional_fidelity = batch.fidelity_sum / n;
        double var = batch.fidelity_sq_sum / n - batch.conditional_fidelity * batch.conditional_fidelity;
        batch.stderr_fidelity = n > 1 ? std::sqrt(std::max(var, 0.0) / (n - 1.0)) : 0.0;
        batch.bernoulli_fidelity = static_cast<double>(batch.test_passes) / n;
        batch.stderr_bernoulli =
            std::sqrt(std::max(batch.bernoulli_fidelity * (1.0 - batch.bernoulli_fidelity), 0.0) / n);
    }
    return batch;
}

}  // namespace qbench
