#include "qflab/fock.hpp"

#include "qflab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace qflab {

namespace {

Eigen::Index max_fock_dim() {
    if (const char* env = std::getenv("QFLAB_MAX_DIM")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<Eigen::Index>(v);
    }
    return 4096;
}

// Occupation tuples with total occupation exactly N, in lexicographic order.
void enumerate_grade(int n_modes, int grade, int max_per_mode,
                     std::vector<int>& current,
                     std::vector<std::vector<int>>& out) {
    const int mode = static_cast<int>(current.size());
    if (mode == n_modes) {
        if (grade == 0) out.push_back(current);
        return;
    }
    const int limit = std::min(grade, max_per_mode);
    for (int occ = 0; occ <= limit; ++occ) {
        current.push_back(occ);
        enumerate_grade(n_modes, grade - occ, max_per_mode, current, out);
        current.pop_back();
    }
}

}  // namespace

ModeSpace ModeSpace::build(int n_modes, Statistics statistics, int cutoff) {
    if (n_modes < 1) throw InvalidInput("ModeSpace: n_modes must be >= 1");
    ModeSpace space;
    space.n_modes_ = n_modes;
    space.statistics_ = statistics;
    if (statistics == Statistics::Fermion) {
        space.cutoff_ = n_modes;
    } else {
        if (cutoff < 1) throw InvalidInput("ModeSpace: boson cutoff must be >= 1");
        space.cutoff_ = cutoff;
    }
    const int per_mode = statistics == Statistics::Fermion ? 1 : space.cutoff_;

    // Grade by total occupation, vacuum first.
    std::vector<int> scratch;
    for (int grade = 0; grade <= space.cutoff_; ++grade)
        enumerate_grade(n_modes, grade, per_mode, scratch, space.basis_);

    const Eigen::Index limit = max_fock_dim();
    if (static_cast<Eigen::Index>(space.basis_.size()) > limit)
        throw DimensionOverflow("ModeSpace: Fock dimension " +
                                std::to_string(space.basis_.size()) +
                                " exceeds limit " + std::to_string(limit));

    std::size_t lookup_size = 1;
    for (int m = 0; m < n_modes; ++m) lookup_size *= static_cast<std::size_t>(per_mode + 1);
    space.index_lookup_.assign(lookup_size, -1);
    for (std::size_t i = 0; i < space.basis_.size(); ++i)
        space.index_lookup_[space.key_of(space.basis_[i])] =
            static_cast<Eigen::Index>(i);

    space.build_operators();
    return space;
}

std::size_t ModeSpace::key_of(const std::vector<int>& occ) const {
    const int radix = (statistics_ == Statistics::Fermion ? 1 : cutoff_) + 1;
    std::size_t key = 0;
    for (int o : occ) key = key * static_cast<std::size_t>(radix) + static_cast<std::size_t>(o);
    return key;
}

int ModeSpace::total_occupation(Eigen::Index i) const {
    const auto& occ = basis_[static_cast<std::size_t>(i)];
    return std::accumulate(occ.begin(), occ.end(), 0);
}

Eigen::Index ModeSpace::index_of(const std::vector<int>& occupation) const {
    if (static_cast<int>(occupation.size()) != n_modes_)
        throw InvalidInput("index_of: occupation tuple has wrong length");
    int total = 0;
    const int per_mode = statistics_ == Statistics::Fermion ? 1 : cutoff_;
    for (int o : occupation) {
        if (o < 0 || o > per_mode) throw InvalidInput("index_of: occupation out of range");
        total += o;
    }
    if (total > cutoff_) throw InvalidInput("index_of: total occupation above cutoff");
    return index_lookup_[key_of(occupation)];
}

void ModeSpace::build_operators() {
    const Eigen::Index d = dim();
    annihilators_.assign(static_cast<std::size_t>(n_modes_), Matrix::Zero(d, d));
    std::vector<int> occ;
    for (Eigen::Index col = 0; col < d; ++col) {
        occ = basis_[static_cast<std::size_t>(col)];
        for (int k = 0; k < n_modes_; ++k) {
            if (occ[static_cast<std::size_t>(k)] == 0) continue;
            double amp;
            if (statistics_ == Statistics::Fermion) {
                int swaps = 0;
                for (int j = 0; j < k; ++j) swaps += occ[static_cast<std::size_t>(j)];
                amp = (swaps % 2 == 0) ? 1.0 : -1.0;
            } else {
                amp = std::sqrt(static_cast<double>(occ[static_cast<std::size_t>(k)]));
            }
            occ[static_cast<std::size_t>(k)] -= 1;
            const Eigen::Index row = index_lookup_[key_of(occ)];
            occ[static_cast<std::size_t>(k)] += 1;
            annihilators_[static_cast<std::size_t>(k)](row, col) = amp;
        }
    }
    annihilators_sparse_.reserve(static_cast<std::size_t>(n_modes_));
    creators_sparse_.reserve(static_cast<std::size_t>(n_modes_));
    for (int k = 0; k < n_modes_; ++k) {
        SparseOp sp = annihilators_[static_cast<std::size_t>(k)].sparseView();
        sp.makeCompressed();
        SparseOp spc = SparseOp(sp.adjoint());
        spc.makeCompressed();
        annihilators_sparse_.push_back(std::move(sp));
        creators_sparse_.push_back(std::move(spc));
    }
}

const Matrix& ModeSpace::annihilator(int k) const {
    if (k < 1 || k > n_modes_) throw InvalidInput("annihilator: mode index out of range");
    return annihilators_[static_cast<std::size_t>(k - 1)];
}

const ModeSpace::SparseOp& ModeSpace::annihilator_sparse(int k) const {
    if (k < 1 || k > n_modes_) throw InvalidInput("annihilator_sparse: mode index out of range");
    return annihilators_sparse_[static_cast<std::size_t>(k - 1)];
}

const ModeSpace::SparseOp& ModeSpace::creator_sparse(int k) const {
    if (k < 1 || k > n_modes_) throw InvalidInput("creator_sparse: mode index out of range");
    return creators_sparse_[static_cast<std::size_t>(k - 1)];
}

Matrix ModeSpace::annihilator(const Vector& f) const {
    if (f.size() != n_modes_) throw InvalidInput("annihilator: vector has wrong length");
    Matrix op = Matrix::Zero(dim(), dim());
    for (int k = 1; k <= n_modes_; ++k) op += std::conj(f(k - 1)) * annihilator(k);
    return op;
}

Matrix ModeSpace::creator(const Vector& f) const {
    if (f.size() != n_modes_) throw InvalidInput("creator: vector has wrong length");
    Matrix op = Matrix::Zero(dim(), dim());
    for (int k = 1; k <= n_modes_; ++k) op += f(k - 1) * creator(k);
    return op;
}

Matrix ModeSpace::number_operator() const {
    Vector diag(dim());
    for (Eigen::Index i = 0; i < dim(); ++i)
        diag(i) = static_cast<double>(total_occupation(i));
    return diag.asDiagonal();
}

Vector ModeSpace::vacuum() const {
    Vector v = Vector::Zero(dim());
    v(0) = 1.0;
    return v;
}

Vector ModeSpace::basis_vector(Eigen::Index i) const {
    Vector v = Vector::Zero(dim());
    v(i) = 1.0;
    return v;
}

double ModeSpace::occupation_mass_above(const Matrix& rho, int limit) const {
    double mass = 0.0;
    for (Eigen::Index i = 0; i < dim(); ++i)
        if (total_occupation(i) > limit) mass += std::real(rho(i, i));
    return mass;
}

double ModeSpace::occupation_mass_above(const Vector& psi, int limit) const {
    double mass = 0.0;
    for (Eigen::Index i = 0; i < dim(); ++i)
        if (total_occupation(i) > limit) mass += std::norm(psi(i));
    return mass;
}

void require_density_matrix(const Matrix& rho, const Tolerances& tol) {
    if (rho.rows() != rho.cols())
        throw NotADensityMatrix("density matrix is not square");
    const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol.equality * scale)
        throw NotADensityMatrix("density matrix is not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol.equality)
        throw NotADensityMatrix("density matrix does not have unit trace");
    // fast path: a pivoted LDLT accepts clearly semidefinite matrices; the
    // eigenvalue check only runs on borderline input
    const Matrix sym = (rho + rho.adjoint()) / 2.0;
    Eigen::LDLT<Matrix> ldlt(sym + tol.psd_floor * scale * Matrix::Identity(rho.rows(), rho.cols()));
    if (ldlt.info() == Eigen::Success && ldlt.isPositive()) return;
    if (!is_psd(sym, tol.psd_floor))
        throw NotADensityMatrix("density matrix is not positive semi-definite");
}

Complex expectation(const ModeSpace& space, const Matrix& rho, const Matrix& obs,
                    const Tolerances& tol) {
    if (rho.rows() != space.dim() || obs.rows() != space.dim())
        throw InvalidInput("expectation: dimension mismatch with ModeSpace");
    require_density_matrix(rho, tol);
    return (rho * obs).trace();
}

}  // namespace qflab
