#include "qflab/bogoliubov.hpp"

#include "qflab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace qflab {

Matrix BogoliubovMap::block() const {
    const int n = n_modes();
    Matrix b(2 * n, 2 * n);
    b.topLeftCorner(n, n) = u;
    b.topRightCorner(n, n) = v;
    b.bottomLeftCorner(n, n) = v.conjugate();
    b.bottomRightCorner(n, n) = u.conjugate();
    return b;
}

BogoliubovMap BogoliubovMap::identity(int n, Statistics statistics) {
    return {Matrix::Identity(n, n), Matrix::Zero(n, n), statistics};
}

BogoliubovMap BogoliubovMap::from_block(const Matrix& block, Statistics statistics,
                                        double tol) {
    if (block.rows() != block.cols() || block.rows() % 2 != 0)
        throw InvalidInput("BogoliubovMap::from_block: block matrix must be 2n x 2n");
    const int n = static_cast<int>(block.rows()) / 2;
    BogoliubovMap map{block.topLeftCorner(n, n), block.topRightCorner(n, n), statistics};
    const double scale = std::max(1.0, spectral_norm(block));
    if (spectral_norm(block.bottomLeftCorner(n, n) - map.v.conjugate()) > tol * scale ||
        spectral_norm(block.bottomRightCorner(n, n) - map.u.conjugate()) > tol * scale)
        throw InvalidInput("BogoliubovMap::from_block: block matrix lacks the (u, v) structure");
    return map;
}

double RelationReport::max() const {
    return std::max({r_uu, r_uTu, r_uv, r_uvT, r_aggregate});
}

RelationReport verify_relations(const BogoliubovMap& m) {
    const int n = m.n_modes();
    const Matrix id = Matrix::Identity(n, n);
    const double s = m.statistics == Statistics::Boson ? -1.0 : 1.0;
    RelationReport r;
    r.r_uu = spectral_norm(m.u * m.u.adjoint() + s * m.v * m.v.adjoint() - id);
    r.r_uTu = spectral_norm(m.u.adjoint() * m.u + s * m.v.transpose() * m.v.conjugate() - id);
    r.r_uv = spectral_norm(m.u.adjoint() * m.v + s * m.v.transpose() * m.u.conjugate());
    r.r_uvT = spectral_norm(m.u * m.v.transpose() + s * m.v * m.u.transpose());
    const Matrix b = m.block();
    if (m.statistics == Statistics::Boson) {
        const Matrix sm = s_matrix(n);
        r.r_aggregate = spectral_norm(b.adjoint() * sm * b - sm);
    } else {
        r.r_aggregate = spectral_norm(b.adjoint() * b - Matrix::Identity(2 * n, 2 * n));
    }
    return r;
}

bool is_valid(const BogoliubovMap& m, double tol) {
    return verify_relations(m).max() <= tol;
}

void require_valid(const BogoliubovMap& m, double tol) {
    const double r = verify_relations(m).max();
    if (r > tol)
        throw InvalidBogoliubov("Bogoliubov relations violated, residual " + std::to_string(r));
}

BogoliubovMap inverse(const BogoliubovMap& m) {
    // bosons: S U* S, fermions: U*
    BogoliubovMap inv{m.u.adjoint(), m.v.transpose(), m.statistics};
    if (m.statistics == Statistics::Boson) inv.v = -inv.v;
    return inv;
}

BogoliubovMap compose(const BogoliubovMap& a, const BogoliubovMap& b) {
    if (a.statistics != b.statistics)
        throw InvalidInput("compose: species mismatch");
    return BogoliubovMap::from_block(a.block() * b.block(), a.statistics, 1e-8);
}

BogoliubovMap exp_generator(const Matrix& a_hermitian, const Matrix& b_pairing,
                            Statistics statistics) {
    const int n = static_cast<int>(a_hermitian.rows());
    if (b_pairing.rows() != n || b_pairing.cols() != n || a_hermitian.cols() != n)
        throw InvalidInput("exp_generator: dimension mismatch");
    Matrix a = (a_hermitian + a_hermitian.adjoint()) / 2.0;
    Matrix b = statistics == Statistics::Boson
                   ? (b_pairing + b_pairing.transpose()).eval() / 2.0
                   : (b_pairing - b_pairing.transpose()).eval() / 2.0;
    Matrix gen(2 * n, 2 * n);
    gen.topLeftCorner(n, n) = Complex(0, 1) * a;
    gen.topRightCorner(n, n) = b;
    gen.bottomLeftCorner(n, n) = b.conjugate();
    gen.bottomRightCorner(n, n) = Complex(0, -1) * a.conjugate();
    return BogoliubovMap::from_block(matrix_exp(gen), statistics, 1e-8);
}

namespace {

// Logarithm of the transposed block map with the conjugation structure
// Sigma1 conj(G) Sigma1 = G preserved. For fermions the -1 eigenvalues are
// assigned +/- i pi in conjugation-paired halves; an odd -1 eigenspace is not
// reachable by a single exponential.
Matrix structured_log(const Matrix& m, Statistics statistics, double tol) {
    const Eigen::Index d = m.rows();
    const double scale = std::max(1.0, spectral_norm(m));

    auto structure_defect = [&](const Matrix& g) {
        Matrix sigma = Matrix::Zero(d, d);
        const Eigen::Index n = d / 2;
        sigma.topRightCorner(n, n) = Matrix::Identity(n, n);
        sigma.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
        double defect = spectral_norm(sigma * g.conjugate() * sigma - g);
        defect = std::max(defect, spectral_norm(matrix_exp(g) - m));
        return defect;
    };

    if (statistics == Statistics::Boson) {
        const Matrix g = matrix_log(m);
        if (!g.allFinite() || structure_defect(g) > tol * scale)
            throw BranchAmbiguity("matrix logarithm of the Bogoliubov map has no "
                                  "structured principal branch");
        return g;
    }

    // Fermion block maps are unitary, hence normal: the Schur form is diagonal
    // and its columns are an orthonormal eigenbasis.
    Eigen::ComplexSchur<Matrix> schur(m);
    const Matrix& t = schur.matrixT();
    const Matrix& q = schur.matrixU();
    Matrix strict = t;
    strict.diagonal().setZero();
    if (strict.cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw BranchAmbiguity("fermion Bogoliubov block map is not numerically normal");

    Matrix g = Matrix::Zero(d, d);
    std::vector<Eigen::Index> minus_pool;
    for (Eigen::Index i = 0; i < d; ++i) {
        const Complex lambda = t(i, i);
        if (std::abs(lambda + Complex(1.0, 0.0)) <= 1e-8) {
            minus_pool.push_back(i);
        } else {
            const double theta = std::arg(lambda);
            g += Complex(0, theta) * q.col(i) * q.col(i).adjoint();
        }
    }

    if (!minus_pool.empty()) {
        if (minus_pool.size() % 2 != 0)
            throw BranchAmbiguity("fermion Bogoliubov map has an odd -1 eigenspace; "
                                  "not reachable by a single exponential");
        const Eigen::Index n = d / 2;
        auto tau = [&](const Vector& x) {
            Vector y(d);
            y.head(n) = x.tail(n).conjugate();
            y.tail(n) = x.head(n).conjugate();
            return y;
        };
        // real orthonormal basis of the conjugation-fixed subspace of ker(m + 1)
        std::vector<Vector> fixed;
        auto try_candidate = [&](const Vector& y) {
            if (fixed.size() == minus_pool.size()) return;
            Vector x = y + tau(y);
            for (const Vector& r : fixed) x -= r * std::real(r.dot(x));
            const double nrm = x.norm();
            if (nrm > 1e-6) fixed.push_back(x / nrm);
        };
        for (Eigen::Index i : minus_pool) {
            try_candidate(q.col(i));
            try_candidate(Complex(0, 1) * q.col(i));
        }
        if (fixed.size() != minus_pool.size())
            throw BranchAmbiguity("failed to split the -1 eigenspace into "
                                  "conjugation-paired halves");
        const double pi = std::numbers::pi;
        for (std::size_t j = 0; j + 1 < fixed.size(); j += 2) {
            const Vector w = (fixed[j] + Complex(0, 1) * fixed[j + 1]) / std::sqrt(2.0);
            const Vector wt = tau(w);
            g += Complex(0, pi) * (w * w.adjoint() - wt * wt.adjoint());
        }
    }

    if (structure_defect(g) > std::max(tol, 1e-7) * scale)
        throw BranchAmbiguity("structured logarithm of the fermion Bogoliubov map "
                              "failed its consistency checks");
    return g;
}

// exp of an anti-Hermitian Fock-space matrix through the Hermitian
// eigendecomposition of i X.
Matrix exp_anti_hermitian(const Matrix& x) {
    Matrix h = Complex(0, 1) * x;
    h = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(Complex(0, -es.eigenvalues()(i)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

void fix_vacuum_phase(Matrix& op) {
    const Complex z = op(0, 0);
    if (std::abs(z) > 1e-12) op *= std::conj(z) / std::abs(z);
}

}  // namespace

Matrix implement_unitary(const BogoliubovMap& map, const ModeSpace& space,
                         const Tolerances& tol) {
    if (map.statistics != space.statistics())
        throw InvalidInput("implement_unitary: species mismatch");
    const int n = map.n_modes();
    if (n != space.n_modes())
        throw InvalidInput("implement_unitary: mode count mismatch");
    require_valid(map, tol.bogoliubov);

    const bool fermion = map.statistics == Statistics::Fermion;
    const Matrix g = structured_log(map.block().transpose(), map.statistics, 1e-8);

    Matrix a = g.topLeftCorner(n, n).transpose();
    Matrix b = g.bottomLeftCorner(n, n).transpose();
    if (!fermion) b = -b;
    // structural consistency of the generator blocks
    const double scale = std::max(1.0, spectral_norm(g));
    double defect = spectral_norm(g.bottomRightCorner(n, n) + a);
    defect = std::max(defect, spectral_norm(g.topRightCorner(n, n) -
                                            g.bottomLeftCorner(n, n).conjugate()));
    defect = std::max(defect, spectral_norm(a + a.adjoint()));
    defect = std::max(defect, fermion ? spectral_norm(b + b.transpose())
                                      : spectral_norm(b - b.transpose()));
    if (defect > 1e-7 * scale)
        throw BranchAmbiguity("quadratic generator blocks violate their structure, "
                              "defect " + std::to_string(defect));
    a = (a - a.adjoint()) / 2.0;
    b = fermion ? ((b - b.transpose()) / 2.0).eval() : ((b + b.transpose()) / 2.0).eval();
    const Matrix c = fermion ? b.conjugate().eval() : (-b.conjugate()).eval();

    // X = sum A_ij a*_i a_j + 1/2 sum B_ij a*_i a*_j + 1/2 sum C_ij a_i a_j
    const Eigen::Index d = space.dim();
    Matrix x = Matrix::Zero(d, d);
    for (int i = 1; i <= n; ++i) {
        Matrix right = Matrix::Zero(d, d);
        Matrix right_pair = Matrix::Zero(d, d);
        Matrix right_lower = Matrix::Zero(d, d);
        for (int j = 1; j <= n; ++j) {
            right += a(i - 1, j - 1) * space.annihilator(j);
            right_pair += b(i - 1, j - 1) * space.creator(j);
            right_lower += c(i - 1, j - 1) * space.annihilator(j);
        }
        x += space.creator(i) * (right + 0.5 * right_pair);
        x += 0.5 * space.annihilator(i) * right_lower;
    }

    Matrix op = exp_anti_hermitian(x);
    if (space.statistics() == Statistics::Boson) {
        const double leak = space.occupation_mass_above(Vector(op.col(0)), space.cutoff() - 2);
        if (leak > 1e-10)
            throw CutoffUnsafe("implement_unitary: transformed vacuum mass " +
                               std::to_string(leak) + " above cutoff - 2");
    }
    fix_vacuum_phase(op);
    return op;
}

Matrix weyl_operator(const Vector& f, const ModeSpace& space, const Tolerances&) {
    if (space.statistics() != Statistics::Boson)
        throw InvalidInput("weyl_operator: boson space required");
    const Matrix phi = (space.creator(f) + space.annihilator(f)) / std::sqrt(2.0);
    Matrix h = (phi + phi.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(Complex(0, es.eigenvalues()(i)));
    Matrix w = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    const double leak = space.occupation_mass_above(Vector(w.col(0)), space.cutoff() - 2);
    if (leak > 1e-10)
        throw CutoffUnsafe("weyl_operator: displaced vacuum mass " +
                           std::to_string(leak) + " above cutoff - 2");
    return w;
}

Matrix weyl_transformation(const Vector& g, const ModeSpace& space,
                           const Tolerances& tol) {
    return weyl_operator(Complex(0, 1) * std::sqrt(2.0) * g, space, tol);
}

namespace {

Matrix submatrix(const Matrix& c, const std::vector<int>& rows,
                 const std::vector<int>& cols) {
    Matrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                c(rows[i], cols[j]);
    return s;
}

// mode indices repeated by multiplicity, e.g. (2,1,0) -> {0,0,1}
std::vector<int> repeated_indices(const std::vector<int>& occ) {
    std::vector<int> out;
    for (std::size_t m = 0; m < occ.size(); ++m)
        for (int r = 0; r < occ[m]; ++r) out.push_back(static_cast<int>(m));
    return out;
}

double occupation_factorial(const std::vector<int>& occ) {
    double f = 1.0;
    for (int o : occ)
        for (int r = 2; r <= o; ++r) f *= r;
    return f;
}

}  // namespace

Matrix second_quantize(const Matrix& c, const ModeSpace& space) {
    const int n = space.n_modes();
    if (c.rows() != n || c.cols() != n)
        throw InvalidInput("second_quantize: one-particle matrix has wrong dimension");
    if (space.statistics() == Statistics::Boson && spectral_norm(c) >= 1.0)
        throw InvalidInput("second_quantize: boson one-particle norm must be < 1");
    const Eigen::Index d = space.dim();
    Matrix out = Matrix::Zero(d, d);
    for (Eigen::Index row = 0; row < d; ++row) {
        const auto& occ_row = space.occupation(row);
        const int grade = space.total_occupation(row);
        const auto rows = repeated_indices(occ_row);
        for (Eigen::Index col = 0; col < d; ++col) {
            if (space.total_occupation(col) != grade) continue;
            const auto cols = repeated_indices(space.occupation(col));
            if (grade == 0) {
                out(row, col) = 1.0;
            } else if (space.statistics() == Statistics::Fermion) {
                out(row, col) = submatrix(c, rows, cols).determinant();
            } else {
                const double norm = std::sqrt(occupation_factorial(occ_row) *
                                              occupation_factorial(space.occupation(col)));
                out(row, col) = permanent(submatrix(c, rows, cols)) / norm;
            }
        }
    }
    return out;
}

Complex second_quantize_trace(const Matrix& c, const ModeSpace& space) {
    return second_quantize(c, space).trace();
}

BogoliubovMap bogoliubov_from_gaussian(const GaussianData& g, double tol) {
    g.validate();
    const PurityReport purity = check_purity(g, tol);
    if (!purity.pure)
        throw NotPure("bogoliubov_from_gaussian: purity residual " +
                      std::to_string(purity.residual));
    const int n = g.n_modes();
    BogoliubovMap map;
    map.statistics = g.statistics;
    if (g.statistics == Statistics::Boson) {
        map.u = hermitian_function(g.gamma, [](double x) { return std::sqrt(std::max(1.0 + x, 0.0)); });
        const Matrix inv_sqrt =
            hermitian_function(g.gamma, [](double x) { return 1.0 / std::sqrt(std::max(1.0 + x, 1e-300)); });
        map.v = g.alpha * inv_sqrt.conjugate();
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> es(g.gamma);
        const double occupied_threshold = 1.0 - 1e-7;
        Eigen::VectorXd sqrt_vals = es.eigenvalues();
        Eigen::VectorXd inv_vals = es.eigenvalues();
        Matrix pairing_unit = Matrix::Zero(n, n);
        for (Eigen::Index k = 0; k < sqrt_vals.size(); ++k) {
            const double lambda = std::clamp(es.eigenvalues()(k), 0.0, 1.0);
            if (lambda >= occupied_threshold) {
                sqrt_vals(k) = 0.0;
                inv_vals(k) = 0.0;
                const Vector phi = es.eigenvectors().col(k);
                pairing_unit += phi * phi.transpose();
            } else {
                sqrt_vals(k) = std::sqrt(1.0 - lambda);
                inv_vals(k) = 1.0 / std::sqrt(1.0 - lambda);
            }
        }
        map.u = es.eigenvectors() * sqrt_vals.cast<Complex>().asDiagonal() *
                es.eigenvectors().adjoint();
        const Matrix inv_sqrt_perp = es.eigenvectors() * inv_vals.cast<Complex>().asDiagonal() *
                                     es.eigenvectors().adjoint();
        map.v = g.alpha * inv_sqrt_perp.conjugate() + pairing_unit;
    }
    require_valid(map, 1e-6);
    return map;
}

}  // namespace qflab
