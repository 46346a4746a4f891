#pragma once

#include "qflab/types.hpp"

#include <Eigen/SparseCore>

#include <memory>
#include <vector>

namespace qflab {

/// A concrete truncated Fock space over n one-particle modes.
///
/// The basis is the set of occupation tuples, graded by total occupation
/// (vacuum first) and ordered lexicographically within each grade. Fermions
/// carry occupation 0/1 per mode; bosons are truncated by a total-occupation
/// cutoff, so the dimension is C(cutoff + n, n).
class ModeSpace {
public:
    static ModeSpace build(int n_modes, Statistics statistics, int cutoff = 0);

    int n_modes() const { return n_modes_; }
    Statistics statistics() const { return statistics_; }
    int cutoff() const { return cutoff_; }
    Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }

    const std::vector<int>& occupation(Eigen::Index basis_index) const {
        return basis_[static_cast<std::size_t>(basis_index)];
    }
    int total_occupation(Eigen::Index basis_index) const;
    Eigen::Index index_of(const std::vector<int>& occupation) const;

    /// Annihilation operator of mode k (1-based) as a dense matrix.
    /// Fermion matrices carry the Jordan-Wigner sign so the CAR hold exactly;
    /// boson entries are sqrt(occupation), truncated at the cutoff.
    const Matrix& annihilator(int k) const;
    Matrix creator(int k) const { return annihilator(k).adjoint(); }

    using SparseOp = Eigen::SparseMatrix<Complex>;
    /// Ladder matrices have one entry per column; products and traces against
    /// them run much faster in sparse form.
    const SparseOp& annihilator_sparse(int k) const;
    const SparseOp& creator_sparse(int k) const;

    /// a(f) = sum_k conj(f_k) a_k (antilinear in f).
    Matrix annihilator(const Vector& f) const;
    /// a*(f) = sum_k f_k a*_k (linear in f).
    Matrix creator(const Vector& f) const;

    /// Diagonal in the occupation basis with eigenvalue = total occupation.
    Matrix number_operator() const;

    Vector vacuum() const;
    Vector basis_vector(Eigen::Index i) const;

    /// Probability mass of rho on basis states with total occupation > limit.
    double occupation_mass_above(const Matrix& rho, int limit) const;
    /// Same for a pure state vector.
    double occupation_mass_above(const Vector& psi, int limit) const;

private:
    int n_modes_ = 0;
    Statistics statistics_ = Statistics::Fermion;
    int cutoff_ = 0;
    std::vector<std::vector<int>> basis_;
    // dense lookup occupation -> index via mixed-radix key
    std::vector<Eigen::Index> index_lookup_;
    std::vector<Matrix> annihilators_;
    std::vector<SparseOp> annihilators_sparse_;
    std::vector<SparseOp> creators_sparse_;

    std::size_t key_of(const std::vector<int>& occ) const;
    void build_operators();
};

/// Validates rho as a density matrix (Hermitian, PSD, unit trace) and returns
/// tr(rho * obs). Throws NotADensityMatrix otherwise.
Complex expectation(const ModeSpace& space, const Matrix& rho, const Matrix& obs,
                    const Tolerances& tol = {});

/// Density-matrix validity check used by expectation(); exposed for reuse.
void require_density_matrix(const Matrix& rho, const Tolerances& tol = {});

}  // namespace qflab
