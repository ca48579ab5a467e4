#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "qbench/benchmarks.hpp"
#include "qbench/special_math.hpp"

namespace qbench {

enum class BasisKind {
    SymmetricQudit,    // |N, n> indexed by partitions of N into d parts
    PerelomovLadder,   // |Psi_{M,N,n}> ladder, n = 0..n_max
    PerelomovPair,     // |Psi_{M,0,m}> (x) |Psi_{0,N,n}>, blocks of fixed m+n
    QuditPair,         // Sym^M (x) Sym^N product basis
};

struct BasisDescriptor {
    BasisKind kind = BasisKind::SymmetricQudit;
    int d = 2;          // qudit dimension
    int N = 1;          // input copies
    int M = 0;          // output copies (pair bases)
    double j = 0.5;     // input Perelomov index
    double k = 0.5;     // output Perelomov index
    int n_max = 0;      // ladder cutoff
    long dimension = 0;
    std::string describe() const;
};

struct HermitianOperator {
    BasisDescriptor basis;
    Eigen::MatrixXcd mat;
    double tail_mass = 0.0;  // truncated eigenvalue mass (ladder bases)
};

// Coefficients of |psi>^{(x)N} on the symmetric basis |N, n>, ordered as
// partitions(N, d).  The input must be normalized.
Eigen::VectorXcd symmetric_embed(const Eigen::VectorXcd& psi, int N);

// Averaged operators for the qudit prior of inverse width beta (diagonal in
// the symmetric basis) and the rescaled operator A on Sym^M (x) Sym^N.
HermitianOperator build_rho_qudit(int N, int d, double beta);
HermitianOperator build_omega_qudit(int N, int M, int d, double beta);
HermitianOperator build_A_qudit(int N, int M, int d, double beta);

// Perelomov ladder operators.  rho and Omega are diagonal on the ladder; the
// rescaled operator A preserves the total ladder index m_out + n_in, so it is
// stored blockwise (block m has dimension m+1) rather than as one dense
// matrix.
double rho_perelomov_eigenvalue(double j, int N, double beta, int n);
double omega_perelomov_eigenvalue(double k, double j, int M, int N, double beta, int m);
HermitianOperator build_rho_perelomov(double j, int N, double beta, int n_max);
HermitianOperator build_omega_perelomov(double k, double j, int M, int N, double beta, int n_max);

struct PerelomovAOperator {
    BasisDescriptor basis;
    std::vector<Eigen::MatrixXcd> blocks;  // indexed by total m = 0..n_max
    std::vector<double> spectrum() const;
    std::vector<double> nonzero_spectrum(double tol = 1e-12) const;
    double norm() const;
};
PerelomovAOperator build_A_perelomov(double k, double j, int M, int N, double beta, int n_max);

// Smallest cutoff whose truncated rho eigenvalue mass is below tail_tol.
int suggest_perelomov_cutoff(double j, int N, double beta, double tail_tol);

// Largest absolute eigenvalue; dense solve up to dimension 2000, power
// iteration above.
double operator_norm(const HermitianOperator& op);
Eigen::VectorXd eigenvalues(const HermitianOperator& op);

// Joint vector |Psi^{(k,j)}_{M,N,n}> assembled from partition sums in the
// (M+N)-fold tensor product of ladders truncated at slot_cutoff per slot.
Eigen::VectorXcd perelomov_joint_vector(double k, double j, int M, int N, int n, int slot_cutoff);

// Ultimate quantum fidelity, Theta_in the partial transpose on the input
// factor of the rescaled operator.  `conjugate_target` targets the conjugated
// output family; `mc_samples > 0` assembles Omega by Monte Carlo instead of
// the diagonal closed form.
struct QuantumFidelityOptions {
    bool conjugate_target = false;
    long mc_samples = 0;
    std::uint64_t seed = 7u;
    int n_max = 60;  // Perelomov cutoff
};
double quantum_fidelity_numeric(const EnsembleSpec& spec, const QuantumFidelityOptions& opts = {});

struct ConjugationCheck {
    double f_quantum = 0.0;
    double f_classical = 0.0;
    double gap = 0.0;
};
// Appendix-style no-advantage check for conjugation targets: the partial
// transpose of the conjugated task's rescaled operator has the same spectrum
// as the plain rescaled operator, whose norm is computed densely here.
ConjugationCheck conjugation_no_advantage_check(const EnsembleSpec& spec, int n_max = 60);

// Plain-text dump of a Hermitian operator (header plus row-major re/im pairs).
void dump_operator(std::ostream& os, const HermitianOperator& op);
HermitianOperator load_operator(std::istream& is);

}  // namespace qbench
