#include "qbench/operators.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qbench/rng.hpp"

namespace qbench {

namespace {

double log_rho_qudit_eigenvalue(int N, int d, double beta, const Partition& n) {
    // d_beta C(N, n) / (C(N+beta+d-1, d-1) C(N+beta, n + (beta,0,..,0)))
    return log_binom_real(beta + d - 1, d - 1) + log_multinomial(N, n) -
           log_binom_real(N + beta + d - 1, d - 1) - log_multinomial_beta(beta, N, n);
}

Eigen::MatrixXcd diagonal_from(const std::vector<double>& vals) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<long>(vals.size()),
                                                static_cast<long>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) {
        m(static_cast<long>(i), static_cast<long>(i)) = vals[i];
    }
    return m;
}

double power_iteration_norm(const Eigen::MatrixXcd& m) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Random(m.rows());
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < 5000; ++it) {
        Eigen::VectorXcd w = m * v;
        double nrm = w.norm();
        if (nrm == 0.0) {
            return 0.0;
        }
        w /= nrm;
        double next = std::abs((w.adjoint() * m * w)(0).real());
        if (std::abs(next - lambda) < 1e-13 * std::max(1.0, next)) {
            return next;
        }
        lambda = next;
        v = w;
    }
    return lambda;
}

void check_hermitian(const HermitianOperator& op) {
    double dev = (op.mat - op.mat.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
        throw std::invalid_argument("operator is not Hermitian (max deviation " +
                                    std::to_string(dev) + ")");
    }
}

// Splitting weight of |Psi_{M,N,m}> onto |Psi_{M,0,m-n}> (x) |Psi_{0,N,n}>.
double perelomov_split_coeff(double k, double j, int M, int N, int m, int n) {
    double lg = 0.5 * (log_binom_real(k * M + (m - n) - 1.0, m - n) +
                       log_binom_real(j * N + n - 1.0, n) -
                       log_binom_real(k * M + j * N + m - 1.0, m));
    return std::exp(lg);
}

}  // namespace

std::string BasisDescriptor::describe() const {
    std::ostringstream os;
    switch (kind) {
        case BasisKind::SymmetricQudit:
            os << "symmetric-qudit N=" << N << " d=" << d;
            break;
        case BasisKind::PerelomovLadder:
            os << "perelomov-ladder k=" << k << " j=" << j << " M=" << M << " N=" << N
               << " n_max=" << n_max;
            break;
        case BasisKind::PerelomovPair:
            os << "perelomov-pair k=" << k << " j=" << j << " M=" << M << " N=" << N
               << " n_max=" << n_max;
            break;
        case BasisKind::QuditPair:
            os << "qudit-pair d=" << d << " M=" << M << " N=" << N;
            break;
    }
    os << " dim=" << dimension;
    return os.str();
}

Eigen::VectorXcd symmetric_embed(const Eigen::VectorXcd& psi, int N) {
    const int d = static_cast<int>(psi.size());
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-9) {
        throw std::invalid_argument("symmetric_embed: input vector must be normalized");
    }
    auto parts = partitions(N, d);
    Eigen::VectorXcd out(static_cast<long>(parts.size()));
    for (size_t i = 0; i < parts.size(); ++i) {
        std::complex<double> c = std::sqrt(multinomial(N, parts[i]));
        for (int jdx = 0; jdx < d; ++jdx) {
            for (int rep = 0; rep < parts[i][jdx]; ++rep) {
                c *= psi(jdx);
            }
        }
        out(static_cast<long>(i)) = c;
    }
    return out;
}

HermitianOperator build_rho_qudit(int N, int d, double beta) {
    auto parts = partitions(N, d);
    std::vector<double> eig(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) {
        eig[i] = std::exp(log_rho_qudit_eigenvalue(N, d, beta, parts[i]));
    }
    HermitianOperator op;
    op.basis = BasisDescriptor{BasisKind::SymmetricQudit, d, N, 0, 0.0, 0.0, 0,
                               static_cast<long>(parts.size())};
    op.mat = diagonal_from(eig);
    return op;
}

HermitianOperator build_omega_qudit(int N, int M, int d, double beta) {
    HermitianOperator op = build_rho_qudit(M + N, d, beta);
    op.basis.N = N;
    op.basis.M = M;
    return op;
}

HermitianOperator build_A_qudit(int N, int M, int d, double beta) {
    auto parts_m = partitions(M, d);
    auto parts_n = partitions(N, d);
    auto parts_t = partitions(M + N, d);
    const long dim_m = static_cast<long>(parts_m.size());
    const long dim_n = static_cast<long>(parts_n.size());

    std::vector<double> inv_sqrt_rho(parts_n.size());
    for (size_t i = 0; i < parts_n.size(); ++i) {
        inv_sqrt_rho[i] = std::exp(-0.5 * log_rho_qudit_eigenvalue(N, d, beta, parts_n[i]));
    }

    // Partition lookup for the Clebsch-style splitting m + n = t.
    auto index_of = [](const std::vector<Partition>& list, const std::vector<int>& key) -> long {
        for (size_t i = 0; i < list.size(); ++i) {
            if (list[i].parts == key) {
                return static_cast<long>(i);
            }
        }
        return -1;
    };

    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim_m * dim_n, dim_m * dim_n);
    for (const Partition& t : parts_t) {
        double log_omega = log_rho_qudit_eigenvalue(M + N, d, beta, t);
        double log_mult_t = log_multinomial(M + N, t);
        // w_t[(m,n)] = sqrt(C(M,m) C(N,n) / C(M+N,t)) rho_n^{-1/2}
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim_m * dim_n);
        for (long im = 0; im < dim_m; ++im) {
            std::vector<int> nkey(static_cast<size_t>(d));
            bool ok = true;
            for (int x = 0; x < d; ++x) {
                nkey[static_cast<size_t>(x)] = t[x] - parts_m[static_cast<size_t>(im)][x];
                if (nkey[static_cast<size_t>(x)] < 0) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                continue;
            }
            long in = index_of(parts_n, nkey);
            if (in < 0) {
                continue;
            }
            double lg = 0.5 * (log_multinomial(M, parts_m[static_cast<size_t>(im)]) +
                               log_multinomial(N, parts_n[static_cast<size_t>(in)]) - log_mult_t);
            w(im * dim_n + in) = std::exp(lg) * inv_sqrt_rho[static_cast<size_t>(in)];
        }
        A += std::exp(log_omega) * (w * w.adjoint());
    }

    HermitianOperator op;
    op.basis = BasisDescriptor{BasisKind::QuditPair, d, N, M, 0.0, 0.0, 0, dim_m * dim_n};
    op.mat = std::move(A);
    return op;
}

double rho_perelomov_eigenvalue(double j, int N, double beta, int n) {
    if (!(beta > 0.0)) {
        throw std::invalid_argument("perelomov operators require beta > 0 (proper prior)");
    }
    double a = j * N;
    return std::exp(std::log(beta) - std::log(2.0 * a + beta) + log_binom_real(a + n - 1.0, n) -
                    log_binom_real(a + 0.5 * beta + n, n));
}

double omega_perelomov_eigenvalue(double k, double j, int M, int N, double beta, int m) {
    if (!(beta > 0.0)) {
        throw std::invalid_argument("perelomov operators require beta > 0 (proper prior)");
    }
    double a = k * M + j * N;
    return std::exp(std::log(beta) - std::log(2.0 * a + beta) + log_binom_real(a + m - 1.0, m) -
                    log_binom_real(a + 0.5 * beta + m, m));
}

HermitianOperator build_rho_perelomov(double j, int N, double beta, int n_max) {
    std::vector<double> eig(static_cast<size_t>(n_max + 1));
    double mass = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        eig[static_cast<size_t>(n)] = rho_perelomov_eigenvalue(j, N, beta, n);
        mass += eig[static_cast<size_t>(n)];
    }
    HermitianOperator op;
    op.basis = BasisDescriptor{BasisKind::PerelomovLadder, 0, N, 0, j, j, n_max,
                               static_cast<long>(n_max + 1)};
    op.mat = diagonal_from(eig);
    op.tail_mass = std::max(0.0, 1.0 - mass);
    return op;
}

HermitianOperator build_omega_perelomov(double k, double j, int M, int N, double beta, int n_max) {
    std::vector<double> eig(static_cast<size_t>(n_max + 1));
    double mass = 0.0;
    for (int m = 0; m <= n_max; ++m) {
        eig[static_cast<size_t>(m)] = omega_perelomov_eigenvalue(k, j, M, N, beta, m);
        mass += eig[static_cast<size_t>(m)];
    }
    HermitianOperator op;
    op.basis = BasisDescriptor{BasisKind::PerelomovLadder, 0, N, M, j, k, n_max,
                               static_cast<long>(n_max + 1)};
    op.mat = diagonal_from(eig);
    op.tail_mass = std::max(0.0, 1.0 - mass);
    return op;
}

PerelomovAOperator build_A_perelomov(double k, double j, int M, int N, double beta, int n_max) {
    PerelomovAOperator A;
    long dim = 0;
    for (int m = 0; m <= n_max; ++m) {
        dim += m + 1;
    }
    A.basis = BasisDescriptor{BasisKind::PerelomovPair, 0, N, M, j, k, n_max, dim};
    A.blocks.reserve(static_cast<size_t>(n_max + 1));
    for (int m = 0; m <= n_max; ++m) {
        double omega_m = omega_perelomov_eigenvalue(k, j, M, N, beta, m);
        Eigen::VectorXcd v(m + 1);
        for (int n = 0; n <= m; ++n) {
            v(n) = perelomov_split_coeff(k, j, M, N, m, n) /
                   std::sqrt(rho_perelomov_eigenvalue(j, N, beta, n));
        }
        A.blocks.push_back(omega_m * (v * v.adjoint()));
    }
    return A;
}

std::vector<double> PerelomovAOperator::spectrum() const {
    std::vector<double> out;
    for (const auto& blk : blocks) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk);
        for (long i = 0; i < es.eigenvalues().size(); ++i) {
            out.push_back(es.eigenvalues()(i));
        }
    }
    return out;
}

std::vector<double> PerelomovAOperator::nonzero_spectrum(double tol) const {
    std::vector<double> out;
    for (double v : spectrum()) {
        if (std::abs(v) > tol) {
            out.push_back(v);
        }
    }
    return out;
}

double PerelomovAOperator::norm() const {
    double mx = 0.0;
    for (double v : spectrum()) {
        mx = std::max(mx, std::abs(v));
    }
    return mx;
}

int suggest_perelomov_cutoff(double j, int N, double beta, double tail_tol) {
    double mass = 0.0;
    const int hard_limit = 2000000;
    for (int n = 0; n < hard_limit; ++n) {
        mass += rho_perelomov_eigenvalue(j, N, beta, n);
        if (1.0 - mass < tail_tol) {
            return n;
        }
    }
    throw std::runtime_error(
        "suggest_perelomov_cutoff: tail decays polynomially (rate 1 + beta/2); requested "
        "tolerance needs a cutoff beyond 2e6");
}

double operator_norm(const HermitianOperator& op) {
    check_hermitian(op);
    if (op.mat.rows() <= 2000) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.mat);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    return power_iteration_norm(op.mat);
}

Eigen::VectorXd eigenvalues(const HermitianOperator& op) {
    check_hermitian(op);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.mat);
    return es.eigenvalues();
}

Eigen::VectorXcd perelomov_joint_vector(double k, double j, int M, int N, int n, int slot_cutoff) {
    const int slots = M + N;
    const long slot_dim = slot_cutoff + 1;
    long dim = 1;
    for (int s = 0; s < slots; ++s) {
        dim *= slot_dim;
    }
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    if (n > slot_cutoff * slots) {
        throw std::invalid_argument("perelomov_joint_vector: n exceeds slot cutoff capacity");
    }
    double log_norm = -0.5 * log_binom_real(k * M + j * N + n - 1.0, n);
    for (const Partition& p : partitions(n, slots)) {
        bool fits = true;
        for (int s = 0; s < slots; ++s) {
            if (p[s] > slot_cutoff) {
                fits = false;
                break;
            }
        }
        if (!fits) {
            continue;
        }
        double lg = log_norm;
        long idx = 0;
        for (int s = 0; s < slots; ++s) {
            double index = (s < M) ? k : j;
            lg += 0.5 * log_binom_real(index + p[s] - 1.0, p[s]);
            idx = idx * slot_dim + p[s];
        }
        out(idx) = std::exp(lg);
    }
    return out;
}

namespace {

// Dense rescaled operator (I (x) rho^{-1/2}) Omega (I (x) rho^{-1/2}) for a
// qudit spec on Sym^M (x) Sym^N; Omega optionally Monte Carlo averaged or
// target-conjugated on the output factor.
Eigen::MatrixXcd qudit_rescaled_operator(const EnsembleSpec& spec,
                                         const QuantumFidelityOptions& opts) {
    const int d = spec.family.input.d;
    const int N = spec.N, M = spec.M;
    const double beta = spec.prior.beta;

    Eigen::MatrixXcd A;
    if (opts.mc_samples > 0) {
        auto parts_m = partitions(M, d);
        auto parts_n = partitions(N, d);
        const long dim = static_cast<long>(parts_m.size() * parts_n.size());
        Eigen::MatrixXcd omega = Eigen::MatrixXcd::Zero(dim, dim);
        auto points = sample_prior(spec.prior, opts.seed, static_cast<int>(opts.mc_samples));
        for (const GroupPoint& g : points) {
            const auto& a = std::get<QuditAngles>(g);
            Eigen::VectorXcd psi(d);
            // Hurwitz state: cos t0 e^{i phi0}|0> + ... + prod sin |d-1>.
            double sin_prod = 1.0;
            for (int x = 0; x < d; ++x) {
                double mag = (x < d - 1) ? std::cos(a.theta[static_cast<size_t>(x)]) : 1.0;
                double phase = (x < d - 1) ? a.phi[static_cast<size_t>(x)] : 0.0;
                psi(x) = sin_prod * mag * std::exp(std::complex<double>(0.0, phase));
                if (x < d - 1) {
                    sin_prod *= std::sin(a.theta[static_cast<size_t>(x)]);
                }
            }
            Eigen::VectorXcd em = symmetric_embed(psi, M);
            if (opts.conjugate_target) {
                em = em.conjugate();
            }
            Eigen::VectorXcd en = symmetric_embed(psi, N);
            Eigen::VectorXcd joint(dim);
            for (long im = 0; im < em.size(); ++im) {
                for (long in = 0; in < en.size(); ++in) {
                    joint(im * en.size() + in) = em(im) * en(in);
                }
            }
            omega += joint * joint.adjoint();
        }
        omega /= static_cast<double>(opts.mc_samples);

        auto rho = build_rho_qudit(N, d, beta);
        const long dim_n = rho.mat.rows();
        Eigen::VectorXd inv_sqrt(dim_n);
        for (long i = 0; i < dim_n; ++i) {
            double v = rho.mat(i, i).real();
            // Pseudo-inverse on the numerically nonzero spectrum.
            inv_sqrt(i) = v > 1e-12 ? 1.0 / std::sqrt(v) : 0.0;
        }
        A = omega;
        for (long r = 0; r < dim; ++r) {
            for (long c = 0; c < dim; ++c) {
                A(r, c) *= inv_sqrt(r % dim_n) * inv_sqrt(c % dim_n);
            }
        }
    } else {
        A = build_A_qudit(N, M, d, beta).mat;
        if (opts.conjugate_target) {
            // Conjugating the target family conjugates Omega on the output
            // factor; with real splitting coefficients the closed-form A is
            // real, so the output-transposed matrix is assembled directly.
            const long dim_n = static_cast<long>(partition_count(N, d));
            const long dim_m = A.rows() / dim_n;
            Eigen::MatrixXcd B(A.rows(), A.cols());
            for (long m = 0; m < dim_m; ++m) {
                for (long n = 0; n < dim_n; ++n) {
                    for (long mp = 0; mp < dim_m; ++mp) {
                        for (long np = 0; np < dim_n; ++np) {
                            B(m * dim_n + n, mp * dim_n + np) =
                                A(mp * dim_n + n, m * dim_n + np);
                        }
                    }
                }
            }
            A = B;
        }
    }
    return A;
}

double partial_transpose_norm(const Eigen::MatrixXcd& A, long dim_m, long dim_n) {
    Eigen::MatrixXcd pt(A.rows(), A.cols());
    for (long m = 0; m < dim_m; ++m) {
        for (long n = 0; n < dim_n; ++n) {
            for (long mp = 0; mp < dim_m; ++mp) {
                for (long np = 0; np < dim_n; ++np) {
                    pt(m * dim_n + n, mp * dim_n + np) = A(m * dim_n + np, mp * dim_n + n);
                }
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

double quantum_fidelity_numeric(const EnsembleSpec& spec, const QuantumFidelityOptions& opts) {
    const FamilyTag tag = spec.family.input.tag;
    if (tag == FamilyTag::Qudit) {
        Eigen::MatrixXcd A = qudit_rescaled_operator(spec, opts);
        const long dim_n = static_cast<long>(partition_count(spec.N, spec.family.input.d));
        return partial_transpose_norm(A, A.rows() / dim_n, dim_n);
    }
    if (tag == FamilyTag::SqueezedVacuum || tag == FamilyTag::Perelomov) {
        const double j = tag == FamilyTag::SqueezedVacuum ? 0.5 : spec.family.input.index;
        const double k = tag == FamilyTag::SqueezedVacuum ? 0.5 : spec.family.target.index;
        const int n_max = opts.n_max;
        auto A = build_A_perelomov(k, j, spec.M, spec.N, spec.prior.beta, n_max);
        if (opts.conjugate_target) {
            // Conjugating the target transposes Omega on the output factor;
            // composed with Theta_in this is a full transpose, and the blocks
            // are real symmetric, so the spectrum is that of A itself.
            return A.norm();
        }
        // A[(m,n),(m',n')] is nonzero iff m+n == m'+n'; after Theta_in the
        // rows become (m,n') and columns (m',n), giving blocks of fixed
        // difference m-n instead of fixed total.
        double best = 0.0;
        for (int delta = -n_max; delta <= n_max; ++delta) {
            std::vector<std::pair<int, int>> states;  // (m, n) with m-n = delta
            for (int n = 0; n <= n_max; ++n) {
                int m = n + delta;
                if (m >= 0 && m <= n_max) {
                    states.emplace_back(m, n);
                }
            }
            const long sz = static_cast<long>(states.size());
            if (sz == 0) {
                continue;
            }
            Eigen::MatrixXcd blk = Eigen::MatrixXcd::Zero(sz, sz);
            for (long r = 0; r < sz; ++r) {
                for (long c = 0; c < sz; ++c) {
                    auto [m, n] = states[static_cast<size_t>(r)];
                    auto [mp, np] = states[static_cast<size_t>(c)];
                    // <m,n|A^PT|m',n'> = A[(m,n'),(m',n)], total t = m + n'.
                    int t = m + np;
                    if (t != mp + n || t > n_max) {
                        continue;
                    }
                    blk(r, c) = A.blocks[static_cast<size_t>(t)](np, n);
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk);
            best = std::max(best, es.eigenvalues().cwiseAbs().maxCoeff());
        }
        return best;
    }
    throw std::invalid_argument(
        "quantum_fidelity_numeric: finite-basis route exists only for qudit and Perelomov specs");
}

ConjugationCheck conjugation_no_advantage_check(const EnsembleSpec& spec, int n_max) {
    const FamilyTag tag = spec.family.input.tag;
    ConjugationCheck out;
    out.f_classical = cft_closed_form(spec).fidelity_threshold;
    if (tag == FamilyTag::Qudit) {
        out.f_quantum = operator_norm(
            build_A_qudit(spec.N, spec.M, spec.family.input.d, spec.prior.beta));
    } else if (tag == FamilyTag::SqueezedVacuum || tag == FamilyTag::Perelomov) {
        const double j = tag == FamilyTag::SqueezedVacuum ? 0.5 : spec.family.input.index;
        const double k = tag == FamilyTag::SqueezedVacuum ? 0.5 : spec.family.target.index;
        out.f_quantum = build_A_perelomov(k, j, spec.M, spec.N, spec.prior.beta, n_max).norm();
    } else {
        throw std::invalid_argument(
            "conjugation_no_advantage_check: supported for qudit and Perelomov specs");
    }
    out.gap = out.f_quantum - out.f_classical;
    return out;
}

void dump_operator(std::ostream& os, const HermitianOperator& op) {
    os << "qbench-operator 1\n";
    os << op.basis.describe() << "\n";
    os << op.mat.rows() << "\n";
    os.precision(17);
    for (long r = 0; r < op.mat.rows(); ++r) {
        for (long c = 0; c < op.mat.cols(); ++c) {
            os << op.mat(r, c).real() << " " << op.mat(r, c).imag()
               << (c + 1 == op.mat.cols() ? "" : " ");
        }
        os << "\n";
    }
}

HermitianOperator load_operator(std::istream& is) {
    std::string magic, version;
    is >> magic >> version;
    if (magic != "qbench-operator") {
        throw std::runtime_error("load_operator: bad header");
    }
    std::string line;
    std::getline(is, line);  // rest of version line
    std::getline(is, line);  // basis description (informational)
    long n = 0;
    is >> n;
    HermitianOperator op;
    op.basis.dimension = n;
    op.mat.resize(n, n);
    for (long r = 0; r < n; ++r) {
        for (long c = 0; c < n; ++c) {
            double re = 0.0, im = 0.0;
            is >> re >> im;
            op.mat(r, c) = {re, im};
        }
    }
    return op;
}

}  // namespace qbench
