#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "qbench/certify.hpp"
#include "qbench/game_sim.hpp"
#include "qbench/io.hpp"
#include "qbench/operators.hpp"
#include "qbench/oracle.hpp"
#include "qbench/srm.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace qbench;

namespace {

json to_json(const py::handle& obj) {
    if (obj.is_none()) {
        return nullptr;
    }
    if (py::isinstance<py::bool_>(obj)) {
        return obj.cast<bool>();
    }
    if (py::isinstance<py::int_>(obj)) {
        return obj.cast<long>();
    }
    if (py::isinstance<py::float_>(obj)) {
        return obj.cast<double>();
    }
    if (py::isinstance<py::str>(obj)) {
        return obj.cast<std::string>();
    }
    if (py::isinstance<py::dict>(obj)) {
        json j = json::object();
        for (auto item : obj.cast<py::dict>()) {
            j[item.first.cast<std::string>()] = to_json(item.second);
        }
        return j;
    }
    if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
        json j = json::array();
        for (auto item : obj.cast<py::sequence>()) {
            j.push_back(to_json(item));
        }
        return j;
    }
    throw std::invalid_argument("unsupported python value in spec");
}

py::object from_json(const json& j) {
    switch (j.type()) {
        case json::value_t::null:
            return py::none();
        case json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case json::value_t::number_integer:
        case json::value_t::number_unsigned:
            return py::int_(j.get<long>());
        case json::value_t::number_float:
            return py::float_(j.get<double>());
        case json::value_t::string:
            return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const json& e : j) {
                out.append(from_json(e));
            }
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it) {
                out[py::str(it.key())] = from_json(it.value());
            }
            return out;
        }
        default:
            return py::none();
    }
}

EnsembleSpec spec_from_pydict(const py::dict& d) { return spec_from_json(to_json(d)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Classical fidelity thresholds for measure-and-prepare state transformation games";

    m.def("benchmark", [](const py::dict& spec_dict) {
        EnsembleSpec spec = spec_from_pydict(spec_dict);
        BenchmarkValue v = spec.k_weights ? cft_kcopy(spec) : cft_closed_form(spec);
        return from_json(benchmark_to_json(v, spec));
    }, py::arg("spec"), "Closed-form threshold for a spec dict");

    m.def("cft_qudit", [](int d, int N, int M, double beta) {
        return cft_qudit(d, N, M, beta).fidelity_threshold;
    }, py::arg("d"), py::arg("N"), py::arg("M"), py::arg("beta"));
    m.def("cft_spin", [](double j, double k, int N, int M, double beta) {
        return cft_spin(j, k, N, M, beta).fidelity_threshold;
    });
    m.def("cft_coherent", [](int N, int M, std::complex<double> gain, double lam) {
        return cft_coherent(N, M, gain, lam).fidelity_threshold;
    });
    m.def("cft_perelomov", [](double j, double k, int N, int M, double beta) {
        return cft_perelomov(j, k, N, M, beta).fidelity_threshold;
    });
    m.def("cft_gaussian_1mode", [](int N, int M, double lam, double beta) {
        return cft_gaussian_1mode(N, M, lam, beta).fidelity_threshold;
    });

    m.def("oracle_cft", [](const py::dict& spec_dict, const std::string& scheme, int nodes,
                           long mc_samples, std::uint64_t seed) {
        EnsembleSpec spec = spec_from_pydict(spec_dict);
        QuadratureConfig cfg;
        cfg.scheme = scheme == "monte_carlo" ? Scheme::monte_carlo : Scheme::gauss_legendre;
        cfg.nodes_per_dim = nodes;
        cfg.mc_samples = mc_samples;
        cfg.seed = seed;
        auto r = cft_numeric(spec, cfg);
        py::dict out;
        out["fidelity"] = r.value.fidelity_threshold;
        out["error"] = r.fidelity_error;
        out["success_probability"] = r.value.success_probability
                                         ? py::object(py::float_(*r.value.success_probability))
                                         : py::object(py::none());
        return out;
    }, py::arg("spec"), py::arg("scheme") = "gauss_legendre", py::arg("nodes") = 64,
       py::arg("mc_samples") = 200000, py::arg("seed") = 20240);

    m.def("simulate", [](const py::dict& spec_dict, const std::string& strategy_name, long trials,
                         std::uint64_t seed, double eta) {
        EnsembleSpec spec = spec_from_pydict(spec_dict);
        Strategy strategy;
        if (strategy_name == "optimal-mp") {
            strategy = optimal_mp_strategy(spec);
        } else if (strategy_name == "srm") {
            strategy = srm_strategy_qubit(eta >= 0.0 ? eta : srm_optimize(spec.prior.beta).eta_opt);
        } else {
            throw std::invalid_argument("strategy must be 'optimal-mp' or 'srm'");
        }
        return from_json(trial_batch_to_json(run_game(spec, strategy, trials, seed)));
    }, py::arg("spec"), py::arg("strategy") = "optimal-mp", py::arg("trials") = 100000,
       py::arg("seed") = 1, py::arg("eta") = -1.0);

    m.def("certify", [](const py::dict& experiment, double z) {
        ExperimentRecord record = experiment_from_json(to_json(experiment));
        return from_json(verdict_to_json(qbench::certify(record, z)));
    }, py::arg("experiment"), py::arg("z") = 3.0);

    m.def("srm_fidelity_qubit", &srm_fidelity_qubit, py::arg("beta"), py::arg("eta"));
    m.def("srm_optimize", [](double beta) {
        SrmResult r = srm_optimize(beta);
        py::dict out;
        out["beta"] = r.beta;
        out["eta_opt"] = r.eta_opt;
        out["fidelity_opt"] = r.fidelity_opt;
        out["benchmark"] = r.benchmark;
        out["gap"] = r.gap;
        return out;
    }, py::arg("beta"));

    m.def("operator_norm_qudit", [](int d, int N, int M, double beta) {
        return operator_norm(build_A_qudit(N, M, d, beta));
    }, py::arg("d"), py::arg("N"), py::arg("M"), py::arg("beta"));
    m.def("perelomov_flat_spectrum", [](double j, double k, int N, int M, double beta, int n_max) {
        return build_A_perelomov(k, j, M, N, beta, n_max).nonzero_spectrum(1e-9);
    }, py::arg("j"), py::arg("k"), py::arg("N"), py::arg("M"), py::arg("beta"),
       py::arg("n_max") = 60);
    m.def("conjugation_gap", [](const py::dict& spec_dict, int n_max) {
        auto check = conjugation_no_advantage_check(spec_from_pydict(spec_dict), n_max);
        py::dict out;
        out["f_quantum"] = check.f_quantum;
        out["f_classical"] = check.f_classical;
        out["gap"] = check.gap;
        return out;
    }, py::arg("spec"), py::arg("n_max") = 60);

    m.def("cat_squeezing_map", &cat_squeezing_map, py::arg("alpha_abs"));
    m.def("cat_confidence_beta", &cat_confidence_beta, py::arg("alpha_max"), py::arg("confidence"));

    m.attr("__version__") = "0.1.0";
}
