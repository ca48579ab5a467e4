#pragma once

#include <json.hpp>

#include "qbench/certify.hpp"
#include "qbench/game_sim.hpp"

namespace qbench {

inline constexpr const char* kSchemaTag = "qbench/1";

// Raised when a spec or experiment file fails to parse or validate; the CLI
// maps it to the data-format exit code.
struct DataFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON forms used by the CLI and the Python bindings.  Spec objects carry
// {family, d?, j?, k?, gain?, N, M, beta?, lambda?, k_weights?}.
nlohmann::json spec_to_json(const EnsembleSpec& spec);
EnsembleSpec spec_from_json(const nlohmann::json& j);

nlohmann::json benchmark_to_json(const BenchmarkValue& value, const EnsembleSpec& spec);
nlohmann::json trial_batch_to_json(const TrialBatch& batch);

ExperimentRecord experiment_from_json(const nlohmann::json& j);
nlohmann::json verdict_to_json(const Verdict& verdict);

// Spec files hold either one spec object or {"schema": "...", "specs": [...]},
// each entry optionally carrying "claimed_fidelity" for verification runs.
struct SpecFileEntry {
    EnsembleSpec spec;
    std::optional<double> claimed_fidelity;
};
std::vector<SpecFileEntry> load_spec_file(const std::string& path);

ExperimentRecord load_experiment_file(const std::string& path);

}  // namespace qbench
