#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbench/benchmarks.hpp"

namespace qbench {

// One experimental run: either a pass/tested count of the verifier's binary
// test, or a reported mean fidelity with its standard error.
struct ExperimentRun {
    std::optional<long> passed;
    std::optional<long> tested;
    std::optional<double> mean_fidelity;
    std::optional<double> stderr_fidelity;
    std::optional<long> samples;
};

struct ExperimentRecord {
    EnsembleSpec ensemble;
    std::vector<ExperimentRun> runs;
};

struct Verdict {
    BenchmarkValue benchmark;
    double observed = 0.0;
    double stderr_observed = 0.0;
    double z_score = 0.0;
    bool certified_quantum = false;
    std::string notes;
};

// Pools the record's runs (binomial pooling for count runs, inverse-variance
// pooling for mean/stderr runs), computes the declared ensemble's closed-form
// benchmark and certifies iff the observed fidelity exceeds it by at least
// z_threshold standard errors.
Verdict certify(const ExperimentRecord& record, double z_threshold = 3.0);

}  // namespace qbench
