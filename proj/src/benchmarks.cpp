#include "qbench/benchmarks.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qbench/special_math.hpp"

namespace qbench {

namespace {

void check_copies(int N, int M) {
    if (N < 1) {
        throw std::invalid_argument("benchmark: N must be >= 1");
    }
    if (M < 1) {
        throw std::invalid_argument("benchmark: M must be >= 1 (the game is undefined without a test)");
    }
}

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

}  // namespace

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::closed_form: return "closed_form";
        case Provenance::quadrature: return "quadrature";
        case Provenance::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

EnsembleSpec EnsembleSpec::make(StateFamily family, int N, int M, double beta, double lambda) {
    EnsembleSpec spec;
    spec.family = family;
    spec.N = N;
    spec.M = M;
    spec.prior = PriorSpec{family.input, beta, lambda};
    return spec;
}

BenchmarkValue cft_qudit(int d, int N, int M, double beta) {
    check_copies(N, M);
    if (d < 2 || beta < 0.0) {
        throw std::invalid_argument("cft_qudit: requires d >= 2, beta >= 0");
    }
    BenchmarkValue out;
    out.formula_id = "qudit";
    // Binomial ratios reduce to products of d-1 factors, stable for widths up
    // to ~1e12 where the lgamma route would cancel catastrophically.
    double f = 1.0, p = 1.0;
    for (int i = 1; i <= d - 1; ++i) {
        f *= (N + beta + i) / (M + N + beta + i);
        p *= (beta + i) / (N + beta + i);
    }
    out.fidelity_threshold = f;
    out.success_probability = p;
    return out;
}

BenchmarkValue cft_spin(double j, double k, int N, int M, double beta) {
    check_copies(N, M);
    if (!(j > 0.0) || !(k > 0.0) || !near_integer(2.0 * j) || !near_integer(2.0 * k)) {
        throw std::invalid_argument("cft_spin: requires half-integer j, k > 0");
    }
    if (beta < 0.0) {
        throw std::invalid_argument("cft_spin: beta must be >= 0");
    }
    BenchmarkValue out;
    out.formula_id = "spin";
    out.fidelity_threshold = (2.0 * j * N + beta + 1.0) / (2.0 * j * N + 2.0 * k * M + beta + 1.0);
    out.success_probability = (beta + 1.0) / (2.0 * j * N + beta + 1.0);
    return out;
}

BenchmarkValue cft_coherent(int N, int M, std::complex<double> gain, double lambda) {
    check_copies(N, M);
    if (lambda < 0.0 || !(std::abs(gain) > 0.0)) {
        throw std::invalid_argument("cft_coherent: requires lambda >= 0 and |gain| > 0");
    }
    BenchmarkValue out;
    out.formula_id = "coherent";
    double g2 = std::norm(gain);
    out.fidelity_threshold = (N + lambda) / (M * g2 + N + lambda);
    if (lambda > 0.0) {
        out.success_probability = lambda / (N + lambda);
    } else {
        out.note = "uniform prior: success probability undefined";
    }
    return out;
}

BenchmarkValue cft_perelomov(double j, double k, int N, int M, double beta) {
    check_copies(N, M);
    if (!(j > 0.0) || !(k > 0.0) || beta < 0.0) {
        throw std::invalid_argument("cft_perelomov: requires j, k > 0 and beta >= 0");
    }
    BenchmarkValue out;
    out.formula_id = "perelomov";
    out.fidelity_threshold = (2.0 * j * N + beta) / (2.0 * k * M + 2.0 * j * N + beta);
    if (beta > 0.0) {
        out.success_probability = beta / (2.0 * j * N + beta);
    } else {
        out.note = "uniform prior: success probability undefined";
    }
    return out;
}

BenchmarkValue cft_gaussian_1mode(int N, int M, double lambda, double beta) {
    check_copies(N, M);
    if (lambda < 0.0 || beta < 0.0) {
        throw std::invalid_argument("cft_gaussian_1mode: requires lambda, beta >= 0");
    }
    // Product of the coherent (g=1) and squeezed-vacuum thresholds; the
    // factorization is exact, so the product is the closed form.
    BenchmarkValue coh = cft_coherent(N, M, {1.0, 0.0}, lambda);
    BenchmarkValue sv = cft_perelomov(0.5, 0.5, N, M, beta);
    BenchmarkValue out;
    out.formula_id = "gaussian-1mode";
    out.fidelity_threshold = coh.fidelity_threshold * sv.fidelity_threshold;
    if (coh.success_probability && sv.success_probability) {
        out.success_probability = *coh.success_probability * *sv.success_probability;
    } else {
        out.note = "uniform prior: success probability undefined";
    }
    if (!near_integer(lambda) || !near_integer(beta)) {
        out.note = out.note.empty() ? "noninteger widths: numerically verified, not proven"
                                    : out.note + "; noninteger widths: numerically verified, not proven";
    }
    return out;
}

BenchmarkValue cft_closed_form(const EnsembleSpec& spec) {
    const FamilyMember& in = spec.family.input;
    const FamilyMember& out_fam = spec.family.target;
    const double beta = spec.prior.beta;
    const double lambda = spec.prior.lambda;
    switch (in.tag) {
        case FamilyTag::Qudit:
            if (out_fam.tag != FamilyTag::Qudit || out_fam.d != in.d) {
                throw std::invalid_argument("qudit benchmark requires matching target dimension");
            }
            return cft_qudit(in.d, spec.N, spec.M, beta);
        case FamilyTag::SpinCoherent:
            return cft_spin(in.index, out_fam.index, spec.N, spec.M, beta);
        case FamilyTag::Coherent:
            return cft_coherent(spec.N, spec.M, out_fam.gain, lambda);
        case FamilyTag::SqueezedVacuum:
            return cft_perelomov(0.5, 0.5, spec.N, spec.M, beta);
        case FamilyTag::Perelomov:
            return cft_perelomov(in.index, out_fam.index, spec.N, spec.M, beta);
        case FamilyTag::GaussianOneMode:
            return cft_gaussian_1mode(spec.N, spec.M, lambda, beta);
    }
    throw std::logic_error("cft_closed_form: unreachable");
}

BenchmarkValue cft_kcopy(const EnsembleSpec& spec) {
    if (!spec.k_weights) {
        throw std::invalid_argument("cft_kcopy: spec has no k_weights");
    }
    const auto& w = *spec.k_weights;
    if (static_cast<int>(w.size()) != spec.M) {
        throw std::invalid_argument("cft_kcopy: k_weights must have M entries (k = 1..M)");
    }
    double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("cft_kcopy: k_weights must sum to 1");
    }
    BenchmarkValue out;
    out.formula_id = "kcopy";
    double f = 0.0;
    for (int k = 1; k <= spec.M; ++k) {
        EnsembleSpec sub = spec;
        sub.M = k;
        sub.k_weights.reset();
        f += w[static_cast<size_t>(k - 1)] * cft_closed_form(sub).fidelity_threshold;
    }
    out.fidelity_threshold = f;
    out.success_probability = success_probability(spec);
    return out;
}

std::optional<double> success_probability(const EnsembleSpec& spec) {
    return cft_closed_form(spec).success_probability;
}

}  // namespace qbench
