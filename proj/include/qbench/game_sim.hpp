#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "qbench/benchmarks.hpp"

namespace qbench {

// A measure-and-prepare strategy for the transformation game: a per-point
// acceptance probability and a conditional fidelity, the latter allowed to
// use internal randomness (the square-root-measurement strategy samples its
// outcome).
struct Strategy {
    std::string name;
    std::function<double(const GroupPoint&)> acceptance;
    std::function<double(const GroupPoint&, Rng&)> conditional_fidelity;
};

struct TrialBatch {
    std::uint64_t seed = 0;
    long trials = 0;
    long successes = 0;          // accepted trials
    long test_passes = 0;        // verifier test passes among successes
    double fidelity_sum = 0.0;   // exact per-trial fidelities (variance reduced)
    double fidelity_sq_sum = 0.0;
    double conditional_fidelity = 0.0;  // fidelity_sum / successes
    double stderr_fidelity = 0.0;       // sample stderr of the exact estimator
    double bernoulli_fidelity = 0.0;    // test_passes / successes
    double stderr_bernoulli = 0.0;
    double success_rate = 0.0;          // successes / trials
    double stderr_success = 0.0;
};

// Two-step optimal protocol: project the inputs on the fiducial state and,
// on success, re-prepare the target fiducial state.
Strategy optimal_mp_strategy(const EnsembleSpec& spec);

// Deterministic square-root-measurement teleportation strategy for single
// qubits: the outcome is sampled exactly from the eta-POVM density.
Strategy srm_strategy_qubit(double eta);

// Simulates `trials` rounds of the game; bit-identical results for identical
// (spec, strategy, trials, seed).
TrialBatch run_game(const EnsembleSpec& spec, const Strategy& strategy, long trials,
                    std::uint64_t seed);

}  // namespace qbench
