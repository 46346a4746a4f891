#pragma once

#include "qflab/types.hpp"

namespace qflab {

/// Largest singular value. Basis independent, matches operator statements.
double spectral_norm(const Matrix& m);

/// Hermiticity defect ||m - m^*|| in spectral norm.
double hermiticity_defect(const Matrix& m);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& hermitian);

/// Smallest eigenvalue together with its eigenvector.
std::pair<double, Vector> min_eigenpair(const Matrix& hermitian);

/// True when all eigenvalues of a Hermitian matrix are >= -floor * scale,
/// where scale is the spectral radius (at least 1).
bool is_psd(const Matrix& hermitian, double floor = 1e-9);

/// f applied to a Hermitian matrix through its eigendecomposition.
template <typename F>
Matrix hermitian_function(const Matrix& m, F&& f) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = f(vals(i));
    return es.eigenvectors() * vals.cast<Complex>().asDiagonal() *
           es.eigenvectors().adjoint();
}

/// Square root of a Hermitian PSD matrix. Eigenvalues in [-1e-12 * scale, 0)
/// are clamped to zero; more negative ones raise InvalidInput.
Matrix hermitian_sqrt_psd(const Matrix& m);

/// Matrix exponential (general complex matrix).
Matrix matrix_exp(const Matrix& m);

/// Principal matrix logarithm (general complex matrix).
Matrix matrix_log(const Matrix& m);

/// Pfaffian of an antisymmetric matrix by recursive first-row expansion.
/// Odd dimension gives 0; empty matrix gives 1. The input must satisfy
/// ||M + M^T|| <= antisymmetry_tol or NotAntisymmetric is thrown.
Complex pfaffian(const Matrix& m, double antisymmetry_tol = 1e-10);

/// Permanent by Ryser's formula (used for bosonic tensor-power matrix
/// elements); exponential in the dimension, fine at desk scale.
Complex permanent(const Matrix& m);

}  // namespace qflab
