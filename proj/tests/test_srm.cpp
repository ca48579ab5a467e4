#include <doctest.h>

#include <cmath>

#include "qbench/benchmarks.hpp"
#include "qbench/srm.hpp"

using namespace qbench;

TEST_CASE("F(0,0) equals the uniform-prior benchmark") {
    CHECK(srm_fidelity_qubit(0.0, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("srm_optimize closed form, gap and radicand") {
    auto r0 = srm_optimize(0.0);
    CHECK(r0.gap == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r0.fidelity_opt == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(std::isfinite(r0.eta_opt));

    auto r1 = srm_optimize(1.0);
    CHECK(r1.fidelity_opt == doctest::Approx(0.7276709).epsilon(1e-6));
    // gap via the re-derived radicand beta^4 + 8 beta^3 + 22 beta^2 + 8 beta + 9
    double expected_gap = 4.0 / (3.0 * 4.0 * (2.0 * 4.0 + std::sqrt(48.0)));
    CHECK(r1.gap == doctest::Approx(expected_gap).epsilon(1e-12));
    CHECK(r1.gap == doctest::Approx(0.02233).epsilon(1e-3));

    for (double beta : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        auto r = srm_optimize(beta);
        CHECK(r.gap > 0.0);
        CHECK(r.benchmark == doctest::Approx((beta + 2.0) / (beta + 3.0)));
        double gap_formula =
            4.0 * beta /
            ((beta + 2.0) * (beta + 3.0) *
             ((beta + 1.0) * (beta + 3.0) +
              std::sqrt((((beta + 8.0) * beta + 22.0) * beta + 8.0) * beta + 9.0)));
        CHECK(r.gap == doctest::Approx(gap_formula).epsilon(1e-9));
        // dominance: the probabilistic threshold beats every SRM width
        for (double eta : {0.0, 0.5 * beta, beta, 2.0 * beta, 10.0}) {
            CHECK(srm_fidelity_qubit(beta, eta) <= r.benchmark + 1e-12);
        }
        // the optimal width is not the ensemble width
        CHECK(std::abs(r.eta_opt - beta) > 1e-3);
    }
}

TEST_CASE("F(beta, .) is unimodal in eta on a coarse scan") {
    for (double beta : {0.5, 2.0, 7.0}) {
        double prev = srm_fidelity_qubit(beta, 0.0);
        int sign_changes = 0;
        int last_sign = 0;
        for (double eta = 0.25; eta < 40.0; eta += 0.25) {
            double cur = srm_fidelity_qubit(beta, eta);
            int sign = cur > prev ? 1 : -1;
            if (last_sign != 0 && sign != last_sign) {
                ++sign_changes;
            }
            last_sign = sign;
            prev = cur;
        }
        CHECK(sign_changes <= 1);
    }
}

TEST_CASE("gap decays like beta^-3 for large beta") {
    double sum_x = 0.0, sum_y = 0.0, sum_xx = 0.0, sum_xy = 0.0;
    int n = 0;
    for (double beta = 100.0; beta <= 10000.0; beta *= std::pow(100.0, 0.25)) {
        double x = std::log(beta);
        double y = std::log(srm_optimize(beta).gap);
        sum_x += x;
        sum_y += y;
        sum_xx += x * x;
        sum_xy += x * y;
        ++n;
    }
    double slope = (n * sum_xy - sum_x * sum_y) / (n * sum_xx - sum_x * sum_x);
    CHECK(slope == doctest::Approx(-3.0).epsilon(0.034));
}

TEST_CASE("srm POVM completeness and concentration") {
    // integrate the outcome density over the sphere for sampled inputs
    for (double eta : {0.0, 1.0, 5.0}) {
        SrmPovmQubit povm = srm_povm_qubit(eta, 1);
        for (double theta_g : {0.0, 0.9, 2.2}) {
            BlochAngles g{theta_g, 0.7};
            double total = 0.0;
            const int nt = 400, np = 16;
            for (int i = 0; i < nt; ++i) {
                double th = M_PI * (i + 0.5) / nt;
                for (int p = 0; p < np; ++p) {
                    double ph = 2.0 * M_PI * (p + 0.5) / np;
                    total += povm.outcome_density(BlochAngles{th, ph}, g) * (M_PI / nt) *
                             (2.0 * M_PI / np);
                }
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-4));
        }
    }

    // peaked-width limit: outcomes concentrate at the north pole
    SrmPovmQubit peaked = srm_povm_qubit(400.0, 1);
    BlochAngles north{0.0, 0.0};
    double near = peaked.outcome_density(BlochAngles{0.05, 0.0}, north);
    double far = peaked.outcome_density(BlochAngles{1.5, 0.0}, north);
    CHECK(near > 1e3 * far);
}

TEST_CASE("srm POVM for several copies stays normalized") {
    SrmPovmQubit povm = srm_povm_qubit(2.0, 3);
    BlochAngles g{1.1, 0.3};
    double total = 0.0;
    const int nt = 600, np = 16;
    for (int i = 0; i < nt; ++i) {
        double th = M_PI * (i + 0.5) / nt;
        for (int p = 0; p < np; ++p) {
            double ph = 2.0 * M_PI * (p + 0.5) / np;
            total += povm.outcome_density(BlochAngles{th, ph}, g) * (M_PI / nt) * (2.0 * M_PI / np);
        }
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("figure_of_merit on the SRM strategy matches the closed form") {
    QuadratureConfig cfg;
    cfg.nodes_per_dim = 48;
    for (auto [beta, eta] : std::vector<std::pair<double, double>>{
             {1.0, srm_optimize(1.0).eta_opt}, {0.0, 0.0}, {2.0, 5.0}}) {
        auto spec = EnsembleSpec::make(StateFamily::teleport(FamilyMember::spin(0.5)), 1, 1, beta);
        auto fom = figure_of_merit([](const GroupPoint&) { return 1.0; },
                                   srm_expected_fidelity_fn(eta, 64), spec, cfg);
        CHECK(fom.p_yes == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(fom.fidelity == doctest::Approx(srm_fidelity_qubit(beta, eta)).epsilon(1e-6));
    }
}

TEST_CASE("monte-carlo figure_of_merit agrees with the closed form within 3 sigma") {
    QuadratureConfig mc;
    mc.scheme = Scheme::monte_carlo;
    mc.mc_samples = 4000;
    mc.seed = 17;
    for (double beta : {0.0, 1.0, 2.0, 5.0}) {
        for (double eta : {0.0, 1.0, 2.0, 5.0}) {
            auto spec =
                EnsembleSpec::make(StateFamily::teleport(FamilyMember::spin(0.5)), 1, 1, beta);
            auto fom = figure_of_merit([](const GroupPoint&) { return 1.0; },
                                       srm_expected_fidelity_fn(eta, 24), spec, mc);
            double sigma = std::max(fom.fidelity_error, 1e-5);
            CHECK(std::abs(fom.fidelity - srm_fidelity_qubit(beta, eta)) < 3.0 * sigma + 2e-4);
        }
    }
}

TEST_CASE("uniform-prior SRM optimality for compact families") {
    auto qubit = srm_uniform_optimality(StateFamily::teleport(FamilyMember::qudit(2)), 1, 1);
    CHECK(qubit.f_srm == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
    CHECK(std::abs(qubit.gap) < 1e-8);

    auto qutrit = srm_uniform_optimality(StateFamily::teleport(FamilyMember::qudit(3)), 1, 2);
    CHECK(qutrit.f_classical == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(std::abs(qutrit.gap) < 1e-8);

    auto spin = srm_uniform_optimality(StateFamily::teleport(FamilyMember::spin(1.0)), 1, 1);
    CHECK(spin.f_classical == doctest::Approx(3.0 / 5.0).epsilon(1e-12));
    CHECK(std::abs(spin.gap) < 1e-8);

    CHECK_THROWS_AS(srm_uniform_optimality(StateFamily::teleport(FamilyMember::coherent()), 1, 1),
                    std::invalid_argument);
}
