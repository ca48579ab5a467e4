#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qbench/certify.hpp"
#include "qbench/game_sim.hpp"
#include "qbench/io.hpp"
#include "qbench/operators.hpp"
#include "qbench/oracle.hpp"
#include "qbench/srm.hpp"

using nlohmann::json;
using namespace qbench;

namespace {

constexpr int kExitVerificationFailure = 2;
constexpr int kExitUsage = 64;
constexpr int kExitDataFormat = 65;

struct FamilyFlags {
    std::string family;
    int d = 2;
    double j = 0.5;
    double k = -1.0;
    std::string gain = "1";
    int N = 1;
    int M = 1;
    double beta = 0.0;
    double lambda = 0.0;
    std::vector<double> kweights;
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f) {
    cmd->add_option("--family", f.family,
                    "qudit | spin | coherent | squeezed-vacuum | perelomov | gaussian-1mode")
        ->required();
    cmd->add_option("--d", f.d, "qudit dimension");
    cmd->add_option("--j", f.j, "input spin / Perelomov index");
    cmd->add_option("--k", f.k, "target spin / Perelomov index (defaults to --j)");
    cmd->add_option("--gain", f.gain, "coherent-state gain, real or re,im");
    cmd->add_option("--N", f.N, "input copies");
    cmd->add_option("--M", f.M, "output copies");
    cmd->add_option("--beta", f.beta, "prior inverse width beta");
    cmd->add_option("--lambda", f.lambda, "prior inverse width lambda");
    cmd->add_option("--kweights", f.kweights, "k-copy test weights over k = 1..M");
}

EnsembleSpec spec_from_flags(const FamilyFlags& f) {
    json j;
    j["family"] = f.family;
    j["N"] = f.N;
    j["M"] = f.M;
    j["beta"] = f.beta;
    j["lambda"] = f.lambda;
    if (f.family == "qudit") {
        j["d"] = f.d;
    }
    if (f.family == "spin" || f.family == "perelomov") {
        j["j"] = f.j;
        j["k"] = f.k < 0.0 ? f.j : f.k;
    }
    if (f.family == "coherent") {
        auto comma = f.gain.find(',');
        if (comma == std::string::npos) {
            j["gain"] = std::stod(f.gain);
        } else {
            j["gain"] = {std::stod(f.gain.substr(0, comma)), std::stod(f.gain.substr(comma + 1))};
        }
    }
    if (!f.kweights.empty()) {
        j["k_weights"] = f.kweights;
    }
    return spec_from_json(j);
}

int run_benchmark(const FamilyFlags& flags) {
    EnsembleSpec spec = spec_from_flags(flags);
    BenchmarkValue value = spec.k_weights ? cft_kcopy(spec) : cft_closed_form(spec);
    std::cout << benchmark_to_json(value, spec).dump(2) << "\n";
    return 0;
}

int run_verify(const std::string& spec_path, const std::string& scheme, int nodes, long mc_samples,
               std::uint64_t seed, double tolerance) {
    auto entries = load_spec_file(spec_path);
    QuadratureConfig cfg;
    cfg.scheme = scheme == "monte_carlo" ? Scheme::monte_carlo : Scheme::gauss_legendre;
    cfg.nodes_per_dim = nodes;
    cfg.mc_samples = mc_samples;
    cfg.seed = seed;

    json report;
    report["schema"] = kSchemaTag;
    report["scheme"] = scheme;
    report["rows"] = json::array();
    bool all_ok = true;
    for (const SpecFileEntry& entry : entries) {
        const EnsembleSpec& spec = entry.spec;
        BenchmarkValue closed = cft_closed_form(spec);
        OracleBenchmark oracle = cft_numeric(spec, cfg);
        double tol = cfg.scheme == Scheme::monte_carlo
                         ? std::max(tolerance, 4.0 * oracle.fidelity_error)
                         : std::max(tolerance, 10.0 * oracle.fidelity_error);

        json row;
        row["spec"] = spec_to_json(spec);
        row["closed_form"] = closed.fidelity_threshold;
        row["oracle"] = oracle.value.fidelity_threshold;
        row["oracle_error"] = oracle.fidelity_error;
        row["delta_oracle"] = closed.fidelity_threshold - oracle.value.fidelity_threshold;
        bool ok = std::abs(row["delta_oracle"].get<double>()) <= tol;

        // Operator-norm route where a finite-basis construction exists.
        const FamilyTag tag = spec.family.input.tag;
        if (tag == FamilyTag::Qudit || tag == FamilyTag::SqueezedVacuum ||
            tag == FamilyTag::Perelomov) {
            if (tag != FamilyTag::Qudit && !(spec.prior.beta > 0.0)) {
                row["operator_norm"] = nullptr;
            } else {
                auto check = conjugation_no_advantage_check(spec);
                row["operator_norm"] = check.f_quantum;
                row["delta_operator"] = closed.fidelity_threshold - check.f_quantum;
                ok = ok && std::abs(row["delta_operator"].get<double>()) <= 1e-6;
            }
        } else {
            row["operator_norm"] = nullptr;
        }

        if (entry.claimed_fidelity) {
            row["claimed_fidelity"] = *entry.claimed_fidelity;
            row["delta_claimed"] = closed.fidelity_threshold - *entry.claimed_fidelity;
            ok = ok && std::abs(row["delta_claimed"].get<double>()) <= tol;
        }
        row["pass"] = ok;
        all_ok = all_ok && ok;
        report["rows"].push_back(row);
    }
    report["all_pass"] = all_ok;
    std::cout << report.dump(2) << "\n";
    return all_ok ? 0 : kExitVerificationFailure;
}

int run_simulate(const std::string& spec_path, const std::string& strategy_name, double eta,
                 long trials, std::uint64_t seed) {
    auto entries = load_spec_file(spec_path);
    if (entries.empty()) {
        throw std::invalid_argument("simulate: spec file holds no specs");
    }
    const EnsembleSpec& spec = entries.front().spec;
    Strategy strategy;
    if (strategy_name == "optimal-mp") {
        strategy = optimal_mp_strategy(spec);
    } else if (strategy_name == "srm") {
        if (eta < 0.0) {
            eta = srm_optimize(spec.prior.beta).eta_opt;
        }
        strategy = srm_strategy_qubit(eta);
    } else {
        throw CLI::ValidationError("--strategy must be optimal-mp or srm");
    }
    TrialBatch batch = run_game(spec, strategy, trials, seed);
    json j = trial_batch_to_json(batch);
    j["strategy"] = strategy.name;
    std::cout << j.dump(2) << "\n";
    return 0;
}

std::vector<int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        return {std::stoi(text)};
    }
    int lo = std::stoi(text.substr(0, dots));
    int hi = std::stoi(text.substr(dots + 2));
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) {
        out.push_back(v);
    }
    return out;
}

int run_sweep(const FamilyFlags& flags, const std::string& n_range, const std::string& m_range,
              const std::vector<double>& width_grid, const std::string& out_path) {
    auto Ns = parse_range(n_range);
    auto Ms = parse_range(m_range);
    std::vector<double> widths = width_grid.empty() ? std::vector<double>{flags.beta} : width_grid;

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("sweep: cannot open output file " + out_path);
    }
    out << "family,d_or_j,k,N,M,beta,lambda,F_c,p_yes\n";
    out.precision(12);
    for (int N : Ns) {
        for (int M : Ms) {
            for (double w : widths) {
                FamilyFlags f = flags;
                f.N = N;
                f.M = M;
                const bool width_is_lambda = flags.family == "coherent";
                if (width_is_lambda) {
                    f.lambda = w;
                } else {
                    f.beta = w;
                }
                EnsembleSpec spec = spec_from_flags(f);
                BenchmarkValue value = cft_closed_form(spec);
                double d_or_j = flags.family == "qudit"
                                    ? static_cast<double>(f.d)
                                    : (flags.family == "spin" || flags.family == "perelomov" ? f.j
                                                                                             : 0.0);
                double k = (flags.family == "spin" || flags.family == "perelomov")
                               ? (f.k < 0.0 ? f.j : f.k)
                               : 0.0;
                out << flags.family << "," << d_or_j << "," << k << "," << N << "," << M << ","
                    << f.beta << "," << f.lambda << "," << value.fidelity_threshold << ",";
                if (value.success_probability) {
                    out << *value.success_probability;
                }
                out << "\n";
            }
        }
    }
    return 0;
}

int run_certify(const std::string& experiment_path, double z) {
    ExperimentRecord record = load_experiment_file(experiment_path);
    Verdict verdict = certify(record, z);
    std::cout << verdict_to_json(verdict).dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical fidelity thresholds for measure-and-prepare games"};
    app.require_subcommand(1);

    FamilyFlags bench_flags;
    CLI::App* bench = app.add_subcommand("benchmark", "closed-form threshold for one ensemble");
    add_family_flags(bench, bench_flags);

    std::string verify_spec, verify_scheme = "gauss_legendre";
    int verify_nodes = 64;
    long verify_mc = 200000;
    std::uint64_t verify_seed = 20240;
    double verify_tol = 1e-6;
    CLI::App* verify = app.add_subcommand("verify", "closed form vs oracle vs operator norm");
    verify->add_option("--spec-file", verify_spec)->required();
    verify->add_option("--scheme", verify_scheme)
        ->check(CLI::IsMember({"gauss_legendre", "monte_carlo"}));
    verify->add_option("--nodes", verify_nodes);
    verify->add_option("--mc-samples", verify_mc);
    verify->add_option("--seed", verify_seed);
    verify->add_option("--tolerance", verify_tol);

    std::string sim_spec, sim_strategy = "optimal-mp";
    double sim_eta = -1.0;
    long sim_trials = 1000000;
    std::uint64_t sim_seed = 1;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo transformation game");
    simulate->add_option("--spec-file", sim_spec)->required();
    simulate->add_option("--strategy", sim_strategy)->check(CLI::IsMember({"optimal-mp", "srm"}));
    simulate->add_option("--eta", sim_eta, "SRM width (defaults to the optimum for beta)");
    simulate->add_option("--trials", sim_trials)->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_seed);

    FamilyFlags sweep_flags;
    std::string sweep_n = "1..4", sweep_m = "1..4", sweep_out;
    std::vector<double> sweep_widths;
    CLI::App* sweep = app.add_subcommand("sweep", "CSV grid of thresholds");
    add_family_flags(sweep, sweep_flags);
    sweep->add_option("--N-range", sweep_n, "e.g. 1..4");
    sweep->add_option("--M-range", sweep_m, "e.g. 1..4");
    sweep->add_option("--width-grid", sweep_widths, "beta (or lambda) values");
    sweep->add_option("--out", sweep_out)->required();

    std::string cert_file;
    double cert_z = 3.0;
    CLI::App* cert = app.add_subcommand("certify", "judge an experiment record");
    cert->add_option("--experiment-file", cert_file)->required();
    cert->add_option("--z", cert_z, "one-sided z threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (bench->parsed()) {
            return run_benchmark(bench_flags);
        }
        if (verify->parsed()) {
            return run_verify(verify_spec, verify_scheme, verify_nodes, verify_mc, verify_seed,
                              verify_tol);
        }
        if (simulate->parsed()) {
            return run_simulate(sim_spec, sim_strategy, sim_eta, sim_trials, sim_seed);
        }
        if (sweep->parsed()) {
            return run_sweep(sweep_flags, sweep_n, sweep_m, sweep_widths, sweep_out);
        }
        if (cert->parsed()) {
            return run_certify(cert_file, cert_z);
        }
    } catch (const DataFormatError& e) {
        std::cerr << "data format error: " << e.what() << "\n";
        return kExitDataFormat;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "data format error: " << e.what() << "\n";
        return kExitDataFormat;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
