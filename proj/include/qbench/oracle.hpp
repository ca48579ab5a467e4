#pragma once

#include <functional>
#include <optional>

#include "qbench/benchmarks.hpp"

namespace qbench {

enum class Scheme { gauss_legendre, monte_carlo };

struct QuadratureConfig {
    Scheme scheme = Scheme::gauss_legendre;
    int nodes_per_dim = 64;          // GL nodes per compact dimension / per radial panel group
    long mc_samples = 200000;
    double noncompact_cutoff = 1.0 - 1e-12;  // cap on u = tanh(coordinate); 1-1e-12 means "decay-adapted"
    std::uint64_t seed = 20240u;
    bool reflect = false;            // evaluate at the conjugated parametrization g -> g*
};

// Numerical benchmark plus error estimates.  Quadrature errors come from
// Richardson comparison between node counts (plus the analytic truncation
// tail); Monte Carlo errors are delta-method standard errors of the ratio.
struct OracleBenchmark {
    BenchmarkValue value;
    double fidelity_error = 0.0;
    double success_error = 0.0;
};

// Direct evaluation of the CFT ratio
//   int p(g) |<psi|psi_g>|^{2M} |<phi|phi_g>|^{2N} dg / int p(g) |<phi|phi_g>|^{2N} dg
// independent of every closed form.
OracleBenchmark cft_numeric(const EnsembleSpec& spec, const QuadratureConfig& cfg);

// Denominator alone; requires a proper (normalizable) prior.
struct OracleScalar {
    double value = 0.0;
    double error = 0.0;
};
OracleScalar success_probability_numeric(const EnsembleSpec& spec, const QuadratureConfig& cfg);

// Average figure of merit of an arbitrary probabilistic protocol described by
// a per-g acceptance probability and a per-g conditional fidelity:
//   F = int p(g) acc(g) fid(g) dg / int p(g) acc(g) dg,  p_yes = int p(g) acc(g) dg.
struct FigureOfMerit {
    double fidelity = 0.0;
    double fidelity_error = 0.0;
    double p_yes = 0.0;
    double p_yes_error = 0.0;
};
FigureOfMerit figure_of_merit(const std::function<double(const GroupPoint&)>& acceptance,
                              const std::function<double(const GroupPoint&)>& conditional_fidelity,
                              const EnsembleSpec& spec, const QuadratureConfig& cfg);

// Plain integral of the prior density over its domain (normalization checks).
OracleScalar prior_mass(const PriorSpec& prior, const QuadratureConfig& cfg);

}  // namespace qbench
