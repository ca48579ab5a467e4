#include "qbench/io.hpp"

#include <fstream>
#include <stdexcept>

namespace qbench {

using nlohmann::json;

namespace {

std::complex<double> gain_from_json(const json& j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw std::invalid_argument("spec: gain must be a number or [re, im]");
}

}  // namespace

json spec_to_json(const EnsembleSpec& spec) {
    json j;
    j["family"] = family_tag_name(spec.family.input.tag);
    switch (spec.family.input.tag) {
        case FamilyTag::Qudit:
            j["d"] = spec.family.input.d;
            break;
        case FamilyTag::SpinCoherent:
        case FamilyTag::Perelomov:
            j["j"] = spec.family.input.index;
            j["k"] = spec.family.target.index;
            break;
        case FamilyTag::Coherent: {
            std::complex<double> g = spec.family.target.gain;
            if (g.imag() == 0.0) {
                j["gain"] = g.real();
            } else {
                j["gain"] = {g.real(), g.imag()};
            }
            break;
        }
        default:
            break;
    }
    j["N"] = spec.N;
    j["M"] = spec.M;
    const bool uses_beta = spec.family.input.tag != FamilyTag::Coherent;
    const bool uses_lambda = spec.family.input.tag == FamilyTag::Coherent ||
                             spec.family.input.tag == FamilyTag::GaussianOneMode;
    if (uses_beta) {
        j["beta"] = spec.prior.beta;
    }
    if (uses_lambda) {
        j["lambda"] = spec.prior.lambda;
    }
    if (spec.k_weights) {
        j["k_weights"] = *spec.k_weights;
    }
    return j;
}

EnsembleSpec spec_from_json(const json& j) {
    if (!j.contains("family")) {
        throw std::invalid_argument("spec: missing family");
    }
    const std::string family = j.at("family").get<std::string>();
    const int N = j.value("N", 1);
    const int M = j.value("M", 1);
    const double beta = j.value("beta", 0.0);
    const double lambda = j.value("lambda", 0.0);

    StateFamily fam;
    if (family == "qudit") {
        fam = StateFamily::teleport(FamilyMember::qudit(j.value("d", 2)));
    } else if (family == "spin") {
        double jj = j.value("j", 0.5);
        double kk = j.value("k", jj);
        fam = StateFamily::map(FamilyMember::spin(jj), FamilyMember::spin(kk));
    } else if (family == "coherent") {
        std::complex<double> gain{1.0, 0.0};
        if (j.contains("gain")) {
            gain = gain_from_json(j.at("gain"));
        }
        fam = StateFamily::map(FamilyMember::coherent({1.0, 0.0}), FamilyMember::coherent(gain));
    } else if (family == "squeezed-vacuum") {
        fam = StateFamily::teleport(FamilyMember::squeezed_vacuum());
    } else if (family == "perelomov") {
        double jj = j.value("j", 0.5);
        double kk = j.value("k", jj);
        fam = StateFamily::map(FamilyMember::perelomov(jj), FamilyMember::perelomov(kk));
    } else if (family == "gaussian-1mode") {
        fam = StateFamily::teleport(FamilyMember::gaussian_one_mode());
    } else {
        throw std::invalid_argument(
            "spec: unknown family '" + family +
            "' (expected qudit, spin, coherent, squeezed-vacuum, perelomov, gaussian-1mode)");
    }

    EnsembleSpec spec = EnsembleSpec::make(fam, N, M, beta, lambda);
    if (j.contains("k_weights")) {
        spec.k_weights = j.at("k_weights").get<std::vector<double>>();
    }
    return spec;
}

json benchmark_to_json(const BenchmarkValue& value, const EnsembleSpec& spec) {
    json j;
    j["schema"] = kSchemaTag;
    j["spec"] = spec_to_json(spec);
    j["fidelity_threshold"] = value.fidelity_threshold;
    if (value.success_probability) {
        j["success_probability"] = *value.success_probability;
    } else {
        j["success_probability"] = nullptr;
    }
    j["formula_id"] = value.formula_id;
    j["provenance"] = provenance_name(value.provenance);
    if (!value.note.empty()) {
        j["note"] = value.note;
    }
    return j;
}

json trial_batch_to_json(const TrialBatch& batch) {
    json j;
    j["schema"] = kSchemaTag;
    j["seed"] = batch.seed;
    j["trials"] = batch.trials;
    j["successes"] = batch.successes;
    j["test_passes"] = batch.test_passes;
    j["fidelity_sum"] = batch.fidelity_sum;
    j["fidelity_sq_sum"] = batch.fidelity_sq_sum;
    j["conditional_fidelity"] = batch.conditional_fidelity;
    j["stderr_fidelity"] = batch.stderr_fidelity;
    j["bernoulli_fidelity"] = batch.bernoulli_fidelity;
    j["stderr_bernoulli"] = batch.stderr_bernoulli;
    j["success_rate"] = batch.success_rate;
    j["stderr_success"] = batch.stderr_success;
    return j;
}

ExperimentRecord experiment_from_json(const json& j) {
    if (j.value("schema", "") != kSchemaTag) {
        throw std::invalid_argument("experiment: missing or unsupported schema tag (need \"qbench/1\")");
    }
    ExperimentRecord record;
    record.ensemble = spec_from_json(j.at("ensemble"));
    for (const json& run : j.at("runs")) {
        ExperimentRun r;
        if (run.contains("passed")) {
            r.passed = run.at("passed").get<long>();
            r.tested = run.at("tested").get<long>();
        }
        if (run.contains("mean_fidelity")) {
            r.mean_fidelity = run.at("mean_fidelity").get<double>();
            r.stderr_fidelity = run.at("stderr").get<double>();
            if (run.contains("samples")) {
                r.samples = run.at("samples").get<long>();
            }
        }
        record.runs.push_back(r);
    }
    return record;
}

json verdict_to_json(const Verdict& verdict) {
    json j;
    j["schema"] = kSchemaTag;
    j["benchmark"] = {
        {"fidelity_threshold", verdict.benchmark.fidelity_threshold},
        {"formula_id", verdict.benchmark.formula_id},
        {"provenance", provenance_name(verdict.benchmark.provenance)},
    };
    if (verdict.benchmark.success_probability) {
        j["benchmark"]["success_probability"] = *verdict.benchmark.success_probability;
    }
    j["observed"] = verdict.observed;
    j["stderr"] = verdict.stderr_observed;
    j["z_score"] = verdict.z_score;
    j["certified_quantum"] = verdict.certified_quantum;
    j["notes"] = verdict.notes;
    return j;
}

std::vector<SpecFileEntry> load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataFormatError("cannot open spec file: " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw DataFormatError("spec file " + path + ": " + e.what());
    }
    std::vector<SpecFileEntry> out;
    auto parse_entry = [&](const json& e) {
        SpecFileEntry entry;
        try {
            entry.spec = spec_from_json(e);
        } catch (const std::invalid_argument& err) {
            throw DataFormatError("spec file " + path + ": " + err.what());
        }
        if (e.contains("claimed_fidelity")) {
            entry.claimed_fidelity = e.at("claimed_fidelity").get<double>();
        }
        out.push_back(entry);
    };
    if (j.is_array()) {
        for (const json& e : j) {
            parse_entry(e);
        }
    } else if (j.contains("specs")) {
        for (const json& e : j.at("specs")) {
            parse_entry(e);
        }
    } else {
        parse_entry(j);
    }
    return out;
}

ExperimentRecord load_experiment_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataFormatError("cannot open experiment file: " + path);
    }
    try {
        return experiment_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw DataFormatError("experiment file " + path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataFormatError("experiment file " + path + ": " + e.what());
    }
}

}  // namespace qbench
