#include "qbench/certify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qbench {

Verdict certify(const ExperimentRecord& record, double z_threshold) {
    if (record.runs.empty()) {
        throw std::invalid_argument("certify: record has no runs");
    }

    long pooled_passed = 0, pooled_tested = 0;
    double inv_var_sum = 0.0, inv_var_weighted = 0.0;
    for (const ExperimentRun& run : record.runs) {
        if (run.passed && run.tested) {
            if (*run.passed < 0 || *run.tested < *run.passed || *run.tested <= 0) {
                throw std::invalid_argument("certify: run requires 0 <= passed <= tested");
            }
            pooled_passed += *run.passed;
            pooled_tested += *run.tested;
        } else if (run.mean_fidelity && run.stderr_fidelity) {
            if (*run.stderr_fidelity < 0.0) {
                throw std::invalid_argument("certify: stderr must be >= 0");
            }
            double var = *run.stderr_fidelity * *run.stderr_fidelity;
            if (var == 0.0) {
                var = 1e-300;  // exact run dominates the pool
            }
            inv_var_sum += 1.0 / var;
            inv_var_weighted += *run.mean_fidelity / var;
        } else {
            throw std::invalid_argument(
                "certify: run must carry passed/tested or mean_fidelity/stderr");
        }
    }

    // Pool the binomial block and the reported-mean block by inverse variance.
    double est = 0.0, var = 0.0;
    bool have = false;
    if (pooled_tested > 0) {
        double p = static_cast<double>(pooled_passed) / static_cast<double>(pooled_tested);
        double v = p * (1.0 - p) / static_cast<double>(pooled_tested);
        if (v == 0.0) {
            v = 1.0 / (static_cast<double>(pooled_tested) * static_cast<double>(pooled_tested));
        }
        est = p;
        var = v;
        have = true;
    }
    if (inv_var_sum > 0.0) {
        double m = inv_var_weighted / inv_var_sum;
        double v = 1.0 / inv_var_sum;
        if (have) {
            double w1 = 1.0 / var, w2 = inv_var_sum;
            est = (est * w1 + m * w2) / (w1 + w2);
            var = 1.0 / (w1 + w2);
        } else {
            est = m;
            var = v;
        }
        have = true;
    }

    Verdict verdict;
    verdict.benchmark = cft_closed_form(record.ensemble);
    verdict.observed = est;
    verdict.stderr_observed = std::sqrt(var);
    double excess = verdict.observed - verdict.benchmark.fidelity_threshold;
    if (verdict.stderr_observed > 0.0) {
        verdict.z_score = excess / verdict.stderr_observed;
    } else {
        verdict.z_score = excess > 0.0 ? std::numeric_limits<double>::infinity()
                                       : (excess < 0.0 ? -std::numeric_limits<double>::infinity() : 0.0);
    }
    verdict.certified_quantum = verdict.z_score >= z_threshold;
    verdict.notes = verdict.certified_quantum
                        ? "observed fidelity exceeds the classical threshold"
                        : "observed fidelity is consistent with measure-and-prepare strategies";
    return verdict;
}

}  // namespace qbench
