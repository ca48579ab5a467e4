#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbench/ensembles.hpp"

namespace qbench {

// A benchmark query: input family, copy counts and prior widths, plus the
// optional weights of the k-copy test.
struct EnsembleSpec {
    StateFamily family;
    int N = 1;
    int M = 1;
    PriorSpec prior;
    std::optional<std::vector<double>> k_weights;  // over k = 1..M

    static EnsembleSpec make(StateFamily family, int N, int M, double beta, double lambda = 0.0);
};

enum class Provenance { closed_form, quadrature, monte_carlo };

std::string provenance_name(Provenance p);

struct BenchmarkValue {
    double fidelity_threshold = 0.0;
    // Empty for the uniform limit of a noncompact prior, where the success
    // probability of the optimal protocol vanishes but the conditional
    // fidelity stays well defined.
    std::optional<double> success_probability;
    std::string formula_id;
    Provenance provenance = Provenance::closed_form;
    std::string note;
};

// Closed-form classical fidelity thresholds.
BenchmarkValue cft_qudit(int d, int N, int M, double beta);
BenchmarkValue cft_spin(double j, double k, int N, int M, double beta);
BenchmarkValue cft_coherent(int N, int M, std::complex<double> gain, double lambda);
BenchmarkValue cft_perelomov(double j, double k, int N, int M, double beta);
BenchmarkValue cft_gaussian_1mode(int N, int M, double lambda, double beta);

// Dispatch on the spec's family.
BenchmarkValue cft_closed_form(const EnsembleSpec& spec);

// k-copy test: sum_k p(k) F_c(spec with M = k).
BenchmarkValue cft_kcopy(const EnsembleSpec& spec);

// Average yes-probability of the optimal protocol; empty for uniform
// noncompact priors.
std::optional<double> success_probability(const EnsembleSpec& spec);

}  // namespace qbench
