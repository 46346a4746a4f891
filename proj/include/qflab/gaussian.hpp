#pragma once

#include "qflab/fock.hpp"
#include "qflab/types.hpp"

namespace qflab {

struct BogoliubovMap;

/// Two-point data of a state: the one-particle density matrix gamma with
/// entries gamma_ij = <a*_j a_i>, the pairing matrix alpha with entries
/// alpha_ij = <a_j a_i> (symmetric for bosons, antisymmetric for fermions),
/// and the first moment b_i = <a_i> (identically zero for fermions, which are
/// restricted to even states).
struct GaussianData {
    Matrix gamma;
    Matrix alpha;
    Vector b;
    Statistics statistics = Statistics::Boson;

    int n_modes() const { return static_cast<int>(gamma.rows()); }

    /// Checks Hermiticity of gamma, the species symmetry of alpha, PSD of the
    /// block matrix, and b = 0 for fermions. Throws InvalidInput on failure.
    void validate(const Tolerances& tol = {}) const;
};

/// The 2n x 2n block matrix [[gamma, alpha], [alpha^*, 1 +/- conj(gamma)]]
/// (+ bosons, - fermions).
Matrix gen1pdm(const GaussianData& g);

/// The (2n+1) x (2n+1) block matrix extending gen1pdm by the first moment:
/// [[gamma, alpha, b], [alpha^*, 1 + conj(gamma), conj(b)], [b^*, conj(b)^*, 1]].
Matrix further_gen1pdm(const GaussianData& g);

/// diag(1, -1) block signature on h (+) h.
Matrix s_matrix(int n_modes);

/// Extracts (gamma, alpha, b) from a density matrix by tracing against ladder
/// bilinears. For bosons the state must carry negligible occupation mass above
/// cutoff - 2, otherwise CutoffUnsafe is thrown.
GaussianData gaussian_from_density_matrix(const ModeSpace& space, const Matrix& rho,
                                          const Tolerances& tol = {});

struct PurityReport {
    bool pure = false;
    double residual = 0.0;        // block-matrix characterization residual
    double scalar_residual = 0.0; // bosons: ||gamma^2 + gamma - alpha alpha^*||
};

/// Boson purity characterization: the state is pure quasifree iff
/// gt * S * gt = -gt for the generalized 1-pdm gt, equivalently
/// gamma^2 + gamma = alpha alpha^*. Requires centered data (b = 0).
/// Both residuals are computed and must agree on the verdict.
PurityReport check_boson_purity(const GaussianData& g, double tol = 1e-7);

/// Fermion purity characterization: pure quasifree iff gt^2 = gt.
PurityReport check_fermion_purity(const GaussianData& g, double tol = 1e-7);

/// Dispatches on statistics.
PurityReport check_purity(const GaussianData& g, double tol = 1e-7);

/// Purity test for non-centered boson data through the further generalized
/// 1-pdm gh: builds Q_b and tests gh * Q_b * gh = -gh.
bool check_further_purity(const GaussianData& g, double tol = 1e-7);
double further_purity_residual(const GaussianData& g);

/// The quasi-projection kernel Q_f = [[1, 0, -f], [0, -1, conj(f)],
/// [-f^*, conj(f)^*, -1]] on h (+) h (+) C.
Matrix q_kernel(const Vector& f);

/// Factor R_f with Q_f = R_f * diag(1, -1, -1) * R_f^*.
Matrix r_factor(const Vector& f);

/// U^* gt U for a Bogoliubov map U of the matching species.
Matrix conjugate_gen1pdm(const Matrix& gt, const BogoliubovMap& u);

/// Removes the first moment: gamma' = gamma - b b^*, alpha' = alpha - b b^T,
/// b' = 0. Idempotent; a no-op on centered data.
GaussianData recenter(const GaussianData& g);

}  // namespace qflab
