#pragma once

#include "qflab/fock.hpp"
#include "qflab/gaussian.hpp"
#include "qflab/types.hpp"

#include <vector>

namespace qflab {

/// Exchange operator on h (x) h in the row-major pair basis:
/// Ex (f (x) g) = g (x) f.
Matrix exchange_operator(int n);

/// Two-particle density matrix with entries
/// Gamma[(i,j),(k,l)] = <a*_l a*_k a_i a_j>, pair index (i,j) -> i*n + j.
/// For bosons the state must carry negligible mass above cutoff - 4.
Matrix two_pdm_from_state(const ModeSpace& space, const Matrix& rho,
                          const Tolerances& tol = {});

struct AdmissibilityReport {
    bool ok = false;
    bool gamma_hermitian = false;
    bool gamma_psd = false;
    bool trace_matches = false;
    bool gamma2_hermitian = false;
    bool gamma2_exchange_symmetric = false;
    double trace_defect = 0.0;
};

/// Admissibility of a (gamma, Gamma) pair: Gamma Hermitian and exchange
/// symmetric (Ex G = G Ex = G for bosons, = -G for fermions), gamma Hermitian
/// PSD with tr(gamma) = expected_n.
AdmissibilityReport check_admissible(const Matrix& gamma, const Matrix& gamma2,
                                     double expected_n, Statistics statistics,
                                     const Tolerances& tol = {});

struct EigReport {
    bool ok = false;
    double min_eig = 0.0;
    Vector witness;  // eigenvector of the most negative eigenvalue when failing
};

/// P-condition: Gamma >= 0.
EigReport check_P(const Matrix& gamma2, double tol = 1e-9);

struct GReport {
    bool ok = false;
    double min_eig = 0.0;          // exact: smallest eigenvalue of the G kernel
    double worst_sampled = 0.0;    // worst margin over the trial operators
    Matrix witness;                // trial operator A achieving the worst margin
};

/// G-condition: tr((A* (x) A)[Gamma + Ex (gamma (x) 1)]) >= |tr(A gamma)|^2
/// for every A. The exact verdict comes from the smallest eigenvalue of the
/// quadratic-form kernel in vec(A); the trial operators (defaulted to matrix
/// units plus random Hermitian and non-Hermitian samples) serve as witness
/// generators.
GReport check_G(const Matrix& gamma, const Matrix& gamma2,
                const std::vector<Matrix>& trial_ops = {}, double tol = 1e-9);

/// The Hermitian kernel whose positivity is exactly the G-condition.
Matrix g_condition_kernel(const Matrix& gamma, const Matrix& gamma2);

/// Margin of one trial operator A.
double g_condition_margin(const Matrix& gamma, const Matrix& gamma2, const Matrix& a);

/// Q-condition in kernel form:
/// Gamma + (1 + Ex)(gamma (x) 1 + 1 (x) gamma + 1 (x) 1) >= 0.
EigReport check_Q(const Matrix& gamma, const Matrix& gamma2, double tol = 1e-9);

/// Generalized 2-pdm on (h(x)h)^4 (+) h^2 (+) C. Blocks are indexed 1..7 with
/// sizes [n^2, n^2, n^2, n^2, n, n, 1]; the quadratic monomials attached to
/// the first four blocks are a*a*, a*a, aa*, aa and to blocks 5..7 are a*, a,
/// and the unit.
struct Gen2Pdm {
    Matrix m;
    int n = 0;

    Eigen::Index dim() const { return m.rows(); }
    Eigen::Index block_offset(int block) const;
    Eigen::Index block_size(int block) const;
    Matrix block(int row_block, int col_block) const;
};

/// Moment-built linear maps entering the generalized 2-pdm block formulas,
/// each computed from its defining expectation value against rho.
struct Gen2PdmMoments {
    Matrix lambda1;      // [(i,j),(k,l)] = <a*_k a*_l a*_j a_i>
    Matrix lambda2_star; // [(i,j),(k,l)] = <a*_k a*_l a*_j a*_i>
    Matrix delta;        // [(i,j),(k,l)] = <a*_k a*_i a_j a_l>
    Matrix a1;           // [i,(k,l)] = <a*_k a*_l a_i>
    Matrix a2_star;      // [i,(k,l)] = <a*_k a*_l a*_i>
    Matrix q1;           // [i,(k,l)] = <a*_k a_l a_i>
    Matrix q2;           // [i,(k,l)] = <a*_k a_l a*_i>
};

Gen2PdmMoments gen2pdm_moments(const ModeSpace& space, const Matrix& rho);

/// Basis-sum operator B = sum_{i,k} |phi_i (x) phi_i><phi_k (x) phi_k|.
Matrix basis_pair_sum(int n);
/// beta_1^* : C -> h (x) h, the vector with entries delta_ij.
Vector beta1_star(int n);

/// Assembles the generalized 2-pdm from the block formulas over the moment
/// maps above plus the (gamma, alpha, b) data; the corner blocks 5..7 are the
/// further generalized 1-pdm entries verbatim.
Gen2Pdm assemble_gen2pdm(const ModeSpace& space, const Matrix& rho,
                         const Tolerances& tol = {});

/// The same operator built entry-by-entry from its defining expectation
/// values <O_col O_row^*>; used as the cross-check route.
Gen2Pdm gen2pdm_from_definition(const ModeSpace& space, const Matrix& rho,
                                const Tolerances& tol = {});

EigReport check_gen2pdm_psd(const Gen2Pdm& g, double tol = 1e-8);

/// The degree <= 2 polynomial with the given coefficient vector in the
/// generalized 2-pdm basis, as a Fock-space matrix.
Matrix polynomial_from_coefficients(const ModeSpace& space, const Vector& coeffs);

struct PositivityReport {
    bool ok = false;              // all sampled <P P*> >= -tol
    double min_sampled = 0.0;
    bool psd_agrees = false;      // verdict matches check_gen2pdm_psd
    bool oracle_agrees = false;   // quadratic form matches the Fock oracle
    double max_oracle_gap = 0.0;
    Vector witness;               // violating coefficient vector when not ok
};

/// Samples random degree <= 2 polynomials (including non-particle-conserving
/// terms), evaluates <P P*> both through the Fock oracle and as the quadratic
/// form of the generalized 2-pdm, and checks the positivity verdict against
/// check_gen2pdm_psd. When the 2-pdm has a negative eigenvalue its
/// eigenvector is evaluated as a witness polynomial.
PositivityReport polynomial_positivity_harness(const ModeSpace& space, const Matrix& rho,
                                               const Gen2Pdm& g, int n_samples,
                                               std::uint64_t seed, double tol = 1e-8);

/// Positivity sampling against a bare (possibly corrupted) generalized 2-pdm,
/// with the witness evaluation; no Fock oracle involved.
PositivityReport polynomial_positivity_verdict(const Gen2Pdm& g, int n_samples,
                                               std::uint64_t seed, double tol = 1e-8);

}  // namespace qflab
