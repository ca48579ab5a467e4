#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qbench/operators.hpp"
#include "qbench/rng.hpp"

using namespace qbench;

namespace {

Eigen::VectorXcd hurwitz_state(const QuditAngles& a, int d) {
    Eigen::VectorXcd psi(d);
    double sin_prod = 1.0;
    for (int x = 0; x < d; ++x) {
        double mag = (x < d - 1) ? std::cos(a.theta[static_cast<size_t>(x)]) : 1.0;
        double phase = (x < d - 1) ? a.phi[static_cast<size_t>(x)] : 0.0;
        psi(x) = sin_prod * mag * std::exp(std::complex<double>(0.0, phase));
        if (x < d - 1) {
            sin_prod *= std::sin(a.theta[static_cast<size_t>(x)]);
        }
    }
    return psi;
}

}  // namespace

TEST_CASE("symmetric_embed basics") {
    Eigen::VectorXcd e0(2);
    e0 << 1.0, 0.0;
    auto v = symmetric_embed(e0, 3);
    REQUIRE(v.size() == 4);
    CHECK(std::abs(v(0)) == doctest::Approx(1.0));
    CHECK(std::abs(v(1)) == doctest::Approx(0.0));

    Eigen::VectorXcd plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    auto w = symmetric_embed(plus, 2);
    CHECK(w(0).real() == doctest::Approx(0.5));
    CHECK(w(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(w(2).real() == doctest::Approx(0.5));

    Eigen::VectorXcd bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(symmetric_embed(bad, 2), std::invalid_argument);
}

TEST_CASE("symmetric_embed is an isometry for random states") {
    Rng rng(5);
    for (int d = 2; d <= 4; ++d) {
        for (int N = 1; N <= 5; ++N) {
            Eigen::VectorXcd psi(d);
            for (int i = 0; i < d; ++i) {
                psi(i) = std::complex<double>(rng.normal(), rng.normal());
            }
            psi.normalize();
            CHECK(symmetric_embed(psi, N).norm() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("qudit rho eigenvalues") {
    auto r0 = build_rho_qudit(1, 2, 0.0);
    CHECK(r0.mat(0, 0).real() == doctest::Approx(0.5));
    CHECK(r0.mat(1, 1).real() == doctest::Approx(0.5));

    auto r2 = build_rho_qudit(1, 2, 2.0);
    CHECK(r2.mat(0, 0).real() == doctest::Approx(0.75));
    CHECK(r2.mat(1, 1).real() == doctest::Approx(0.25));

    CHECK(build_omega_qudit(1, 1, 3, 1.0).mat.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(build_rho_qudit(3, 4, 2.5).mat.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("monte-carlo averaging reproduces the closed-form rho") {
    const int d = 2, N = 2;
    const double beta = 1.0;
    const long samples = 100000;
    PriorSpec prior{FamilyMember::qudit(d), beta, 0.0};
    auto points = sample_prior(prior, 314, static_cast<int>(samples));

    const long dim = partition_count(N, d);
    Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXd second = Eigen::MatrixXd::Zero(dim, dim);  // of |entry| contributions
    for (const auto& g : points) {
        auto v = symmetric_embed(hurwitz_state(std::get<QuditAngles>(g), d), N);
        Eigen::MatrixXcd outer = v * v.adjoint();
        mean += outer;
        second += outer.cwiseAbs2().real();
    }
    mean /= static_cast<double>(samples);
    auto closed = build_rho_qudit(N, d, beta);
    for (long r = 0; r < dim; ++r) {
        for (long c = 0; c < dim; ++c) {
            double var = second(r, c) / samples - std::norm(mean(r, c));
            double sigma = std::sqrt(std::max(var, 1e-12) / samples);
            CHECK(std::abs(mean(r, c) - closed.mat(r, c)) < 5.0 * sigma);
        }
    }
}

TEST_CASE("qudit A: flat spectrum under the uniform prior") {
    auto a22 = build_A_qudit(1, 1, 2, 0.0);
    auto ev = eigenvalues(a22);
    int nonzero = 0;
    for (long i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i)) > 1e-12) {
            ++nonzero;
            CHECK(ev(i) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        }
    }
    CHECK(nonzero == 3);  // rank C(M+N+d-1, d-1)

    auto a312 = build_A_qudit(1, 2, 3, 0.0);
    auto ev0 = eigenvalues(a312);
    int rank = 0;
    for (long i = 0; i < ev0.size(); ++i) {
        if (std::abs(ev0(i)) > 1e-9) {
            ++rank;
            CHECK(ev0(i) == doctest::Approx(0.3).epsilon(1e-11));
        }
    }
    CHECK(rank == partition_count(3, 3));
}

TEST_CASE("qudit A at beta > 0: norm equals the threshold, lower blocks fall short") {
    // For beta > 0 only the blocks whose partition keeps t_0 >= M reach the
    // threshold value; the clipped blocks sit strictly below it.  The norm
    // equality itself is exact.
    auto a312 = build_A_qudit(1, 2, 3, 1.0);
    double expect = binom_real(1 + 1 + 2, 2) / binom_real(2 + 1 + 1 + 2, 2);
    CHECK(expect == doctest::Approx(0.4));
    CHECK(operator_norm(a312) == doctest::Approx(expect).epsilon(1e-12));
    auto ev2 = eigenvalues(a312);
    int rank = 0;
    for (long i = 0; i < ev2.size(); ++i) {
        if (std::abs(ev2(i)) > 1e-9) {
            ++rank;
            CHECK(ev2(i) <= expect + 1e-12);
        }
    }
    CHECK(rank == partition_count(3, 3));

    // d = 2, N = M = 1, beta = 1: spectrum is {3/4, 3/4, 1/2, 0}; the same
    // values follow from the triplet-basis operators of the qubit ensemble.
    auto ev3 = eigenvalues(build_A_qudit(1, 1, 2, 1.0));
    REQUIRE(ev3.size() == 4);
    CHECK(ev3(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ev3(1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev3(2) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(ev3(3) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("norm equality holds across a qudit grid") {
    for (int d : {2, 3}) {
        for (int N : {1, 2}) {
            for (int M : {1, 2}) {
                for (double beta : {0.0, 1.0, 2.5}) {
                    CHECK(operator_norm(build_A_qudit(N, M, d, beta)) ==
                          doctest::Approx(cft_qudit(d, N, M, beta).fidelity_threshold)
                              .epsilon(1e-11));
                }
            }
        }
    }
}

TEST_CASE("real-argument Chu-Vandermonde with capacity clipping") {
    // sum_j C(M, j) C(N+beta, t-j) == C(M+N+beta, t) whenever no term is
    // clipped by the partition capacity (t <= N keeps every index valid);
    // integer upper indices vanish past their capacity via the pole rule.
    for (int M : {1, 2, 4}) {
        for (int N : {1, 3}) {
            for (double beta : {0.0, 0.5, 1.0, 2.5}) {
                for (int t = 0; t <= N; ++t) {
                    double sum = 0.0;
                    for (int jdx = 0; jdx <= t; ++jdx) {
                        sum += binom_real(M, jdx) * binom_real(N + beta, t - jdx);
                    }
                    CHECK(sum == doctest::Approx(binom_real(M + N + beta, t)).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("operator_norm basics") {
    HermitianOperator id5;
    id5.mat = Eigen::MatrixXcd::Identity(5, 5);
    CHECK(operator_norm(id5) == doctest::Approx(1.0));

    HermitianOperator diag;
    diag.mat = Eigen::MatrixXcd::Zero(3, 3);
    diag.mat(0, 0) = 0.2;
    diag.mat(1, 1) = 0.7;
    diag.mat(2, 2) = 0.7;
    CHECK(operator_norm(diag) == doctest::Approx(0.7));

    HermitianOperator bad;
    bad.mat = Eigen::MatrixXcd::Zero(2, 2);
    bad.mat(0, 1) = 1.0;
    CHECK_THROWS_AS(operator_norm(bad), std::invalid_argument);

    CHECK(operator_norm(build_A_qudit(1, 1, 2, 0.0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("perelomov rho eigenvalues and truncation accounting") {
    // n = 0: both binomials are 1, so the eigenvalue is beta/(2jN+beta).
    CHECK(rho_perelomov_eigenvalue(0.5, 1, 2.0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(rho_perelomov_eigenvalue(1.0, 2, 3.0, 0) == doctest::Approx(3.0 / 7.0).epsilon(1e-12));

    // j = 3/2, N = 1, beta = 4: rho_n = 7.5/((n+1.5)(n+2.5)(n+3.5)), telescoping to 1.
    for (int n : {0, 1, 5, 20}) {
        double expect = 7.5 / ((n + 1.5) * (n + 2.5) * (n + 3.5));
        CHECK(rho_perelomov_eigenvalue(1.5, 1, 4.0, n) == doctest::Approx(expect).epsilon(1e-11));
    }
    auto rho = build_rho_perelomov(1.5, 1, 4.0, 80);
    double trace = rho.mat.trace().real();
    // The tail decays like n^-(1+beta/2): at this cutoff about 5.4e-4 of the
    // mass is truncated, and the operator accounts for it exactly.
    CHECK(trace + rho.tail_mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rho.tail_mass == doctest::Approx(0.5 * 7.5 / (82.5 * 83.5)).epsilon(1e-3));

    int n_needed = suggest_perelomov_cutoff(1.5, 1, 4.0, 1e-4);
    CHECK(build_rho_perelomov(1.5, 1, 4.0, n_needed).tail_mass < 1e-4);
    CHECK(build_rho_perelomov(1.5, 1, 4.0, n_needed - 5).tail_mass > 1e-4);
}

TEST_CASE("perelomov A spectrum is flat at the benchmark value") {
    auto A = build_A_perelomov(1.0, 1.0, 1, 1, 2.0, 60);
    auto nz = A.nonzero_spectrum(1e-9);
    CHECK(nz.size() == 61);
    for (double v : nz) {
        CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    }
    CHECK(A.norm() == doctest::Approx(2.0 / 3.0).epsilon(1e-9));

    // mixed-index transformation j=1/2 -> k=3/2
    auto B = build_A_perelomov(1.5, 0.5, 2, 1, 4.0, 50);
    double expect = (1.0 + 4.0) / (2.0 * 1.5 * 2 + 1.0 + 4.0);
    for (double v : B.nonzero_spectrum(1e-9)) {
        CHECK(v == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("perelomov joint vectors are orthonormal (partition-sum assembly)") {
    for (auto [k, j] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {1.5, 0.5}, {1.0, 1.0}}) {
        for (auto [M, N] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 1}}) {
            const int n_top = 6;
            std::vector<Eigen::VectorXcd> vecs;
            for (int n = 0; n <= n_top; ++n) {
                vecs.push_back(perelomov_joint_vector(k, j, M, N, n, n_top));
            }
            for (int a = 0; a <= n_top; ++a) {
                for (int b = 0; b <= n_top; ++b) {
                    std::complex<double> g = vecs[static_cast<size_t>(a)].dot(vecs[static_cast<size_t>(b)]);
                    CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("quantum fidelity: known limits and bounds") {
    // Teleportation of a known input (huge beta) is classical already.
    auto peaked = EnsembleSpec::make(StateFamily::teleport(FamilyMember::qudit(2)), 1, 1, 1e6);
    CHECK(quantum_fidelity_numeric(peaked) == doctest::Approx(1.0).epsilon(1e-5));

    // Uniform teleportation reaches fidelity one with quantum resources.
    auto tele = EnsembleSpec::make(StateFamily::teleport(FamilyMember::qudit(2)), 1, 1, 0.0);
    CHECK(quantum_fidelity_numeric(tele) == doctest::Approx(1.0).epsilon(1e-10));

    // 1 -> 2 cloning: strictly above the classical threshold.
    auto clone = EnsembleSpec::make(StateFamily::teleport(FamilyMember::qudit(2)), 1, 2, 0.0);
    double fq = quantum_fidelity_numeric(clone);
    CHECK(fq >= cft_qudit(2, 1, 2, 0.0).fidelity_threshold);
    CHECK(fq == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("perelomov partial-transpose route: teleportation approaches one") {
    auto sv = EnsembleSpec::make(StateFamily::teleport(FamilyMember::squeezed_vacuum()), 1, 1, 3.0);
    QuantumFidelityOptions coarse, fine;
    coarse.n_max = 40;
    fine.n_max = 80;
    double f40 = quantum_fidelity_numeric(sv, coarse);
    double f80 = quantum_fidelity_numeric(sv, fine);
    CHECK(f40 > 0.995);
    CHECK(f80 > f40);  // truncation releases toward the identity-channel value 1
    CHECK(f80 < 1.0 + 1e-12);

    QuantumFidelityOptions o;
    o.n_max = 80;
    auto clone = EnsembleSpec::make(
        StateFamily::map(FamilyMember::perelomov(1.0), FamilyMember::perelomov(1.0)), 1, 2, 2.0);
    double fq = quantum_fidelity_numeric(clone, o);
    CHECK(fq > cft_perelomov(1.0, 1.0, 1, 2, 2.0).fidelity_threshold);
    CHECK(fq < 1.0);
}

TEST_CASE("conjugation target removes the quantum advantage") {
    QuantumFidelityOptions conj;
    conj.conjugate_target = true;

    auto qubit = EnsembleSpec::make(StateFamily::teleport(FamilyMember::qudit(2)), 1, 1, 0.0);
    CHECK(quantum_fidelity_numeric(qubit, conj) ==
          doctest::Approx(cft_qudit(2, 1, 1, 0.0).fidelity_threshold).epsilon(1e-8));

    auto qutrit = EnsembleSpec::make(StateFamily::teleport(FamilyMember::qudit(3)), 1, 2, 1.5);
    CHECK(quantum_fidelity_numeric(qutrit, conj) ==
          doctest::Approx(cft_qudit(3, 1, 2, 1.5).fidelity_threshold).epsilon(1e-8));

    auto sv = EnsembleSpec::make(StateFamily::teleport(FamilyMember::squeezed_vacuum()), 1, 1, 3.0);
    QuantumFidelityOptions conj_tr = conj;
    conj_tr.n_max = 60;
    CHECK(quantum_fidelity_numeric(sv, conj_tr) ==
          doctest::Approx(cft_perelomov(0.5, 0.5, 1, 1, 3.0).fidelity_threshold).epsilon(1e-6));
}

TEST_CASE("conjugation_no_advantage_check gaps vanish") {
    auto qubit = EnsembleSpec::make(StateFamily::teleport(FamilyMember::qudit(2)), 1, 1, 0.0);
    auto c1 = conjugation_no_advantage_check(qubit);
    CHECK(std::abs(c1.gap) < 1e-9);

    auto qutrit = EnsembleSpec::make(StateFamily::teleport(FamilyMember::qudit(3)), 1, 1, 2.0);
    auto c2 = conjugation_no_advantage_check(qutrit);
    CHECK(std::abs(c2.gap) < 1e-9);

    auto sv = EnsembleSpec::make(StateFamily::teleport(FamilyMember::squeezed_vacuum()), 1, 1, 3.0);
    auto c3 = conjugation_no_advantage_check(sv, 60);
    CHECK(std::abs(c3.gap) < 1e-6);
}

TEST_CASE("monte-carlo assembled quantum fidelity is close to the structured one") {
    QuantumFidelityOptions mc;
    mc.conjugate_target = true;
    mc.mc_samples = 20000;
    mc.seed = 8;
    auto spec = EnsembleSpec::make(StateFamily::teleport(FamilyMember::qudit(2)), 1, 1, 1.0);
    double via_mc = quantum_fidelity_numeric(spec, mc);
    double closed = cft_qudit(2, 1, 1, 1.0).fidelity_threshold;
    CHECK(std::abs(via_mc - closed) < 0.02);
}

TEST_CASE("operator dump round-trips") {
    auto op = build_rho_qudit(2, 2, 1.5);
    std::stringstream ss;
    dump_operator(ss, op);
    auto back = load_operator(ss);
    REQUIRE(back.mat.rows() == op.mat.rows());
    CHECK((back.mat - op.mat).cwiseAbs().maxCoeff() < 1e-15);
}
