#include <doctest.h>

#include <cmath>

#include "qbench/oracle.hpp"

using namespace qbench;

namespace {

EnsembleSpec qudit_spec(int d, int N, int M, double beta) {
    return EnsembleSpec::make(StateFamily::teleport(FamilyMember::qudit(d)), N, M, beta);
}

EnsembleSpec coherent_spec(int N, int M, double gain, double lambda) {
    return EnsembleSpec::make(
        StateFamily::map(FamilyMember::coherent(), FamilyMember::coherent({gain, 0.0})), N, M, 0.0,
        lambda);
}

EnsembleSpec perelomov_spec(double j, double k, int N, int M, double beta) {
    return EnsembleSpec::make(
        StateFamily::map(FamilyMember::perelomov(j), FamilyMember::perelomov(k)), N, M, beta);
}

}  // namespace

TEST_CASE("quadrature oracle reproduces the module examples") {
    QuadratureConfig cfg;
    auto qubit = cft_numeric(qudit_spec(2, 1, 1, 0.0), cfg);
    CHECK(qubit.value.fidelity_threshold == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    CHECK(qubit.fidelity_error < 1e-8);

    auto coh = cft_numeric(coherent_spec(1, 1, 1.0, 3.0), cfg);
    CHECK(coh.value.fidelity_threshold == doctest::Approx(4.0 / 5.0).epsilon(1e-8));
    CHECK(coh.fidelity_error < 1e-8);

    auto per = cft_numeric(perelomov_spec(1.5, 1.5, 1, 2, 4.0), cfg);
    CHECK(per.value.fidelity_threshold == doctest::Approx(7.0 / 13.0).epsilon(1e-6));
    CHECK(per.fidelity_error < 1e-6);
}

TEST_CASE("spin thresholds match the oracle (substitution N -> 2jN, M -> 2kM)") {
    QuadratureConfig cfg;
    for (auto [j, k] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {1.0, 1.5}, {1.5, 0.5}}) {
        for (double beta : {0.0, 1.5}) {
            auto spec = EnsembleSpec::make(
                StateFamily::map(FamilyMember::spin(j), FamilyMember::spin(k)), 2, 1, beta);
            double closed = cft_spin(j, k, 2, 1, beta).fidelity_threshold;
            auto oracle = cft_numeric(spec, cfg);
            CHECK(oracle.value.fidelity_threshold == doctest::Approx(closed).epsilon(1e-8));
        }
    }
}

TEST_CASE("mixed-index Perelomov map against the oracle") {
    QuadratureConfig cfg;
    auto spec = perelomov_spec(0.5, 1.5, 1, 2, 3.0);
    double closed = cft_perelomov(0.5, 1.5, 1, 2, 3.0).fidelity_threshold;
    CHECK(closed == doctest::Approx((1.0 + 3.0) / (6.0 + 1.0 + 3.0)));
    CHECK(cft_numeric(spec, cfg).value.fidelity_threshold ==
          doctest::Approx(closed).epsilon(1e-7));
}

TEST_CASE("qudit d=4 oracle spot check") {
    QuadratureConfig cfg;
    cfg.nodes_per_dim = 48;
    auto spec = EnsembleSpec::make(StateFamily::teleport(FamilyMember::qudit(4)), 1, 2, 1.0);
    auto oracle = cft_numeric(spec, cfg);
    CHECK(oracle.value.fidelity_threshold ==
          doctest::Approx(cft_qudit(4, 1, 2, 1.0).fidelity_threshold).epsilon(1e-7));
}

TEST_CASE("success probability oracle") {
    QuadratureConfig cfg;
    auto coh = success_probability_numeric(coherent_spec(1, 1, 1.0, 1.0), cfg);
    CHECK(coh.value == doctest::Approx(0.5).epsilon(1e-8));

    auto qutrit = success_probability_numeric(qudit_spec(3, 1, 1, 0.0), cfg);
    CHECK(qutrit.value == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

    auto per = success_probability_numeric(perelomov_spec(1.0, 1.0, 1, 1, 2.0), cfg);
    CHECK(per.value == doctest::Approx(0.5).epsilon(1e-6));

    CHECK_THROWS_AS(success_probability_numeric(coherent_spec(1, 1, 1.0, 0.0), cfg),
                    std::invalid_argument);
}

TEST_CASE("gauss-legendre and monte-carlo schemes agree within 3 sigma") {
    QuadratureConfig quad;
    QuadratureConfig mc;
    mc.scheme = Scheme::monte_carlo;
    mc.mc_samples = 200000;
    mc.seed = 99;
    std::vector<EnsembleSpec> specs = {
        qudit_spec(2, 1, 2, 1.0),
        qudit_spec(3, 2, 1, 0.5),
        coherent_spec(1, 2, 1.0, 2.0),
        perelomov_spec(0.5, 0.5, 1, 1, 3.0),
        EnsembleSpec::make(StateFamily::teleport(FamilyMember::gaussian_one_mode()), 1, 1, 4.0, 2.0),
    };
    for (const auto& spec : specs) {
        auto a = cft_numeric(spec, quad);
        auto b = cft_numeric(spec, mc);
        double sigma = std::sqrt(a.fidelity_error * a.fidelity_error +
                                 b.fidelity_error * b.fidelity_error);
        CHECK(std::abs(a.value.fidelity_threshold - b.value.fidelity_threshold) < 3.0 * sigma);
    }
}

TEST_CASE("doubling the node count changes the result by less than the estimate") {
    QuadratureConfig coarse;
    coarse.nodes_per_dim = 32;
    QuadratureConfig fine;
    fine.nodes_per_dim = 64;
    for (const auto& spec : {qudit_spec(2, 1, 1, 0.5), coherent_spec(1, 1, 1.0, 1.0),
                             perelomov_spec(1.5, 1.5, 1, 1, 2.0)}) {
        auto a = cft_numeric(spec, coarse);
        auto b = cft_numeric(spec, fine);
        CHECK(std::abs(a.value.fidelity_threshold - b.value.fidelity_threshold) <=
              a.fidelity_error + b.fidelity_error + 1e-12);
    }
}

TEST_CASE("conjugating the parametrization leaves the CFT unchanged") {
    QuadratureConfig plain;
    QuadratureConfig reflected;
    reflected.reflect = true;
    for (const auto& spec :
         {qudit_spec(3, 1, 1, 1.0), coherent_spec(1, 1, 1.0, 2.0),
          perelomov_spec(1.5, 1.5, 1, 1, 2.0),
          EnsembleSpec::make(StateFamily::teleport(FamilyMember::gaussian_one_mode()), 1, 1, 4.0,
                             2.0)}) {
        auto a = cft_numeric(spec, plain);
        auto b = cft_numeric(spec, reflected);
        CHECK(a.value.fidelity_threshold ==
              doctest::Approx(b.value.fidelity_threshold).epsilon(1e-10));
    }
}

TEST_CASE("figure_of_merit reduces to the deterministic figure and to the CFT") {
    QuadratureConfig cfg;
    auto spec = qudit_spec(2, 1, 1, 0.0);
    const FamilyMember fam = spec.family.input;

    // acc == 1: deterministic protocol, p_yes = 1, F = int p fid.
    auto det = figure_of_merit([](const GroupPoint&) { return 1.0; },
                               [fam](const GroupPoint& g) { return overlap_sq(fam, g); }, spec, cfg);
    CHECK(det.p_yes == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(det.fidelity == doctest::Approx(0.5).epsilon(1e-8));

    // acc = |<phi|phi_g>|^{2N}, fid = |<psi|psi_g>|^{2M}: the optimal protocol.
    auto opt = figure_of_merit(
        [fam](const GroupPoint& g) { return overlap_sq(fam, g); },
        [fam](const GroupPoint& g) { return overlap_sq(fam, g); }, spec, cfg);
    CHECK(opt.fidelity == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    CHECK(opt.p_yes == doctest::Approx(0.5).epsilon(1e-8));

    CHECK_THROWS_AS(figure_of_merit([](const GroupPoint&) { return 1.5; },
                                    [](const GroupPoint&) { return 1.0; }, spec, cfg),
                    std::invalid_argument);
}

TEST_CASE("uniform noncompact priors: ratio defined, success undefined") {
    QuadratureConfig cfg;
    auto coh = cft_numeric(coherent_spec(1, 1, 1.0, 0.0), cfg);
    CHECK(coh.value.fidelity_threshold == doctest::Approx(0.5).epsilon(1e-8));
    CHECK_FALSE(coh.value.success_probability.has_value());

    auto sv = cft_numeric(perelomov_spec(0.5, 0.5, 1, 1, 0.0), cfg);
    CHECK(sv.value.fidelity_threshold == doctest::Approx(0.5).epsilon(1e-7));

    auto gauss = EnsembleSpec::make(StateFamily::teleport(FamilyMember::gaussian_one_mode()), 1, 1,
                                    0.0, 1.0);
    CHECK_THROWS_AS(cft_numeric(gauss, cfg), std::invalid_argument);
}

TEST_CASE("monte-carlo oracle is reproducible for a fixed seed") {
    QuadratureConfig mc;
    mc.scheme = Scheme::monte_carlo;
    mc.mc_samples = 20000;
    mc.seed = 42;
    auto spec = qudit_spec(2, 1, 1, 1.0);
    auto a = cft_numeric(spec, mc);
    auto b = cft_numeric(spec, mc);
    CHECK(a.value.fidelity_threshold == b.value.fidelity_threshold);
    CHECK(a.fidelity_error == b.fidelity_error);
}
