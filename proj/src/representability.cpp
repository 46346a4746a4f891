#include "qflab/representability.hpp"

#include "qflab/linalg.hpp"

#include <cmath>
#include <random>

namespace qflab {

namespace {

// Cached products for 2-, 3- and 4-point moments of one state. Operator ids:
// 0..n-1 annihilators, n..2n-1 creators.
class MomentCache {
public:
    MomentCache(const ModeSpace& space, const Matrix& rho) : n_(space.n_modes()) {
        std::vector<ModeSpace::SparseOp> sparse;
        sparse.reserve(2 * static_cast<std::size_t>(n_));
        ops_.reserve(2 * static_cast<std::size_t>(n_));
        for (int k = 1; k <= n_; ++k) {
            sparse.push_back(space.annihilator_sparse(k));
            ops_.push_back(space.annihilator(k));
        }
        for (int k = 1; k <= n_; ++k) {
            sparse.push_back(space.creator_sparse(k));
            ops_.push_back(space.creator(k));
        }
        const std::size_t m = ops_.size();
        left_.resize(m * m);
        right_.resize(m * m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                const ModeSpace::SparseOp pair = sparse[a] * sparse[b];
                right_[a * m + b] = Matrix(pair);
                left_[a * m + b] = rho * pair;
            }
        rho_ = rho;
    }

    int an(int mode) const { return mode - 1; }
    int cr(int mode) const { return mode - 1 + n_; }

    Complex mom1(int a) const { return (rho_ * ops_[static_cast<std::size_t>(a)]).trace(); }
    Complex mom2(int a, int b) const {
        return left_[static_cast<std::size_t>(a) * ops_.size() + static_cast<std::size_t>(b)].trace();
    }
    Complex mom3(int a, int b, int c) const {
        const Matrix& l = left_[static_cast<std::size_t>(a) * ops_.size() + static_cast<std::size_t>(b)];
        return (l * ops_[static_cast<std::size_t>(c)]).trace();
    }
    Complex mom4(int a, int b, int c, int d) const {
        const Matrix& l = left_[static_cast<std::size_t>(a) * ops_.size() + static_cast<std::size_t>(b)];
        const Matrix& r = right_[static_cast<std::size_t>(c) * ops_.size() + static_cast<std::size_t>(d)];
        return l.cwiseProduct(r.transpose()).sum();
    }

    const Matrix& op(int id) const { return ops_[static_cast<std::size_t>(id)]; }

private:
    int n_;
    Matrix rho_;
    std::vector<Matrix> ops_;
    std::vector<Matrix> left_;
    std::vector<Matrix> right_;
};

void require_pair_safe(const ModeSpace& space, const Matrix& rho, int margin,
                       const Tolerances& tol, const char* who) {
    if (space.statistics() != Statistics::Boson) return;
    const double leak = space.occupation_mass_above(rho, space.cutoff() - margin);
    if (leak > tol.cutoff_mass)
        throw CutoffUnsafe(std::string(who) + ": occupation mass " +
                           std::to_string(leak) + " above cutoff - " +
                           std::to_string(margin));
}

}  // namespace

Matrix exchange_operator(int n) {
    Matrix ex = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) ex(i * n + j, j * n + i) = 1.0;
    return ex;
}

Matrix two_pdm_from_state(const ModeSpace& space, const Matrix& rho,
                          const Tolerances& tol) {
    require_density_matrix(rho, tol);
    require_pair_safe(space, rho, 4, tol, "two_pdm_from_state");
    const int n = space.n_modes();
    const MomentCache cache(space, rho);
    Matrix gamma2(n * n, n * n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l)
                    gamma2((i - 1) * n + (j - 1), (k - 1) * n + (l - 1)) =
                        cache.mom4(cache.cr(l), cache.cr(k), cache.an(i), cache.an(j));
    return (gamma2 + gamma2.adjoint()) / 2.0;
}

AdmissibilityReport check_admissible(const Matrix& gamma, const Matrix& gamma2,
                                     double expected_n, Statistics statistics,
                                     const Tolerances& tol) {
    AdmissibilityReport r;
    const int n = static_cast<int>(gamma.rows());
    const Matrix ex = exchange_operator(n);
    const double scale1 = std::max(1.0, spectral_norm(gamma));
    const double scale2 = std::max(1.0, spectral_norm(gamma2));
    r.gamma_hermitian = hermiticity_defect(gamma) <= tol.equality * scale1;
    r.gamma_psd = is_psd((gamma + gamma.adjoint()) / 2.0, tol.psd_floor);
    r.trace_defect = std::abs(gamma.trace().real() - expected_n) +
                     std::abs(gamma.trace().imag());
    r.trace_matches = r.trace_defect <= tol.equality * std::max(1.0, expected_n);
    r.gamma2_hermitian = hermiticity_defect(gamma2) <= tol.equality * scale2;
    const double sign = statistics == Statistics::Boson ? 1.0 : -1.0;
    r.gamma2_exchange_symmetric =
        spectral_norm(ex * gamma2 - sign * gamma2) <= tol.equality * scale2 &&
        spectral_norm(gamma2 * ex - sign * gamma2) <= tol.equality * scale2;
    r.ok = r.gamma_hermitian && r.gamma_psd && r.trace_matches && r.gamma2_hermitian &&
           r.gamma2_exchange_symmetric;
    return r;
}

EigReport check_P(const Matrix& gamma2, double tol) {
    EigReport r;
    auto [eig, vec] = min_eigenpair((gamma2 + gamma2.adjoint()) / 2.0);
    r.min_eig = eig;
    const double scale = std::max(1.0, spectral_norm(gamma2));
    r.ok = eig >= -tol * scale;
    if (!r.ok) r.witness = vec;
    return r;
}

Matrix g_condition_kernel(const Matrix& gamma, const Matrix& gamma2) {
    const int n = static_cast<int>(gamma.rows());
    Matrix kernel(n * n, n * n);
    // vec(A) index (i,j) -> i*n + j; kernel[(i,j),(k,l)] =
    //   Gamma[(i,l),(k,j)] + delta_ik gamma_lj - gamma_ij conj(gamma_kl)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    Complex value = gamma2(i * n + l, k * n + j);
                    if (i == k) value += gamma(l, j);
                    value -= gamma(i, j) * std::conj(gamma(k, l));
                    kernel(i * n + j, k * n + l) = value;
                }
    return (kernel + kernel.adjoint()) / 2.0;
}

double g_condition_margin(const Matrix& gamma, const Matrix& gamma2, const Matrix& a) {
    const int n = static_cast<int>(gamma.rows());
    const Matrix ex = exchange_operator(n);
    Matrix a_star_tensor_a(n * n, n * n);
    const Matrix a_star = a.adjoint();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    a_star_tensor_a(i * n + j, k * n + l) = a_star(i, k) * a(j, l);
    Matrix gamma_tensor_one = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                gamma_tensor_one(i * n + j, k * n + j) = gamma(i, k);
    const Complex lhs = (a_star_tensor_a * (gamma2 + ex * gamma_tensor_one)).trace();
    const Complex tr_a_gamma = (a * gamma).trace();
    return lhs.real() - std::norm(tr_a_gamma);
}

GReport check_G(const Matrix& gamma, const Matrix& gamma2,
                const std::vector<Matrix>& trial_ops, double tol) {
    GReport r;
    const int n = static_cast<int>(gamma.rows());
    const Matrix kernel = g_condition_kernel(gamma, gamma2);
    auto [eig, vec] = min_eigenpair(kernel);
    r.min_eig = eig;
    const double scale = std::max(1.0, spectral_norm(gamma2));
    r.ok = eig >= -tol * scale;

    std::vector<Matrix> trials = trial_ops;
    if (trials.empty()) {
        // matrix units plus random Hermitian and non-Hermitian samples
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Matrix unit = Matrix::Zero(n, n);
                unit(i, j) = 1.0;
                trials.push_back(unit);
            }
        std::mt19937_64 rng(20240811u);
        std::normal_distribution<double> normal;
        for (int s = 0; s < 50; ++s) {
            Matrix a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = Complex(normal(rng), normal(rng));
            trials.push_back(((a + a.adjoint()) / 2.0).eval());
            trials.push_back(a);
        }
    }
    // the kernel eigenvector reshaped is itself a trial operator
    {
        Matrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = vec(i * n + j);
        trials.push_back(a);
    }
    r.worst_sampled = std::numeric_limits<double>::infinity();
    for (const auto& a : trials) {
        const double margin = g_condition_margin(gamma, gamma2, a);
        if (margin < r.worst_sampled) {
            r.worst_sampled = margin;
            r.witness = a;
        }
    }
    return r;
}

EigReport check_Q(const Matrix& gamma, const Matrix& gamma2, double tol) {
    const int n = static_cast<int>(gamma.rows());
    const Matrix ex = exchange_operator(n);
    const Matrix id = Matrix::Identity(n, n);
    Matrix gamma_tensor_one = Matrix::Zero(n * n, n * n);
    Matrix one_tensor_gamma = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                gamma_tensor_one(i * n + j, k * n + j) = gamma(i, k);
                one_tensor_gamma(j * n + i, j * n + k) = gamma(i, k);
            }
    const Matrix shift = (Matrix::Identity(n * n, n * n) + ex) *
                         (gamma_tensor_one + one_tensor_gamma +
                          Matrix::Identity(n * n, n * n));
    EigReport r;
    const Matrix q = gamma2 + shift;
    auto [eig, vec] = min_eigenpair((q + q.adjoint()) / 2.0);
    r.min_eig = eig;
    const double scale = std::max(1.0, spectral_norm(q));
    r.ok = eig >= -tol * scale;
    if (!r.ok) r.witness = vec;
    return r;
}

Eigen::Index Gen2Pdm::block_offset(int block) const {
    const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
    switch (block) {
        case 1: return 0;
        case 2: return n2;
        case 3: return 2 * n2;
        case 4: return 3 * n2;
        case 5: return 4 * n2;
        case 6: return 4 * n2 + n;
        case 7: return 4 * n2 + 2 * n;
        default: throw InvalidInput("Gen2Pdm: block index out of range");
    }
}

Eigen::Index Gen2Pdm::block_size(int block) const {
    if (block >= 1 && block <= 4) return static_cast<Eigen::Index>(n) * n;
    if (block == 5 || block == 6) return n;
    if (block == 7) return 1;
    throw InvalidInput("Gen2Pdm: block index out of range");
}

Matrix Gen2Pdm::block(int row_block, int col_block) const {
    return m.block(block_offset(row_block), block_offset(col_block),
                   block_size(row_block), block_size(col_block));
}

Gen2PdmMoments gen2pdm_moments(const ModeSpace& space, const Matrix& rho) {
    const int n = space.n_modes();
    const MomentCache c(space, rho);
    Gen2PdmMoments m;
    m.lambda1.resize(n * n, n * n);
    m.lambda2_star.resize(n * n, n * n);
    m.delta.resize(n * n, n * n);
    m.a1.resize(n, n * n);
    m.a2_star.resize(n, n * n);
    m.q1.resize(n, n * n);
    m.q2.resize(n, n * n);
    for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
            const int col = (k - 1) * n + (l - 1);
            for (int i = 1; i <= n; ++i) {
                for (int j = 1; j <= n; ++j) {
                    const int row = (i - 1) * n + (j - 1);
                    m.lambda1(row, col) = c.mom4(c.cr(k), c.cr(l), c.cr(j), c.an(i));
                    m.lambda2_star(row, col) = c.mom4(c.cr(k), c.cr(l), c.cr(j), c.cr(i));
                    m.delta(row, col) = c.mom4(c.cr(k), c.cr(i), c.an(j), c.an(l));
                }
                m.a1(i - 1, col) = c.mom3(c.cr(k), c.cr(l), c.an(i));
                m.a2_star(i - 1, col) = c.mom3(c.cr(k), c.cr(l), c.cr(i));
                m.q1(i - 1, col) = c.mom3(c.cr(k), c.an(l), c.an(i));
                m.q2(i - 1, col) = c.mom3(c.cr(k), c.an(l), c.cr(i));
            }
        }
    return m;
}

Matrix basis_pair_sum(int n) {
    Matrix b = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) b(i * n + i, k * n + k) = 1.0;
    return b;
}

Vector beta1_star(int n) {
    Vector v = Vector::Zero(n * n);
    for (int i = 0; i < n; ++i) v(i * n + i) = 1.0;
    return v;
}

Gen2Pdm assemble_gen2pdm(const ModeSpace& space, const Matrix& rho,
                         const Tolerances& tol) {
    if (space.statistics() != Statistics::Boson)
        throw InvalidInput("assemble_gen2pdm: boson space required");
    require_density_matrix(rho, tol);
    require_pair_safe(space, rho, 4, tol, "assemble_gen2pdm");

    const int n = space.n_modes();
    const Gen2PdmMoments mom = gen2pdm_moments(space, rho);
    const Matrix gamma2 = two_pdm_from_state(space, rho, tol);
    const GaussianData g = gaussian_from_density_matrix(space, rho, tol);

    const Matrix ex = exchange_operator(n);
    const Matrix bsum = basis_pair_sum(n);
    const Vector beta1s = beta1_star(n);
    const Matrix id2 = Matrix::Identity(n * n, n * n);
    auto tensor_left = [&](const Matrix& a) {  // a (x) 1
        Matrix out = Matrix::Zero(n * n, n * n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) out(i * n + j, k * n + j) = a(i, k);
        return out;
    };
    auto tensor_right = [&](const Matrix& a) {  // 1 (x) a
        Matrix out = Matrix::Zero(n * n, n * n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) out(j * n + i, j * n + k) = a(i, k);
        return out;
    };

    Gen2Pdm result;
    result.n = n;
    const Eigen::Index dim = 4 * static_cast<Eigen::Index>(n) * n + 2 * n + 1;
    result.m = Matrix::Zero(dim, dim);

    auto put = [&](int rb, int cb, const Matrix& value) {
        result.m.block(result.block_offset(rb), result.block_offset(cb),
                       result.block_size(rb), result.block_size(cb)) = value;
        if (rb != cb)
            result.m.block(result.block_offset(cb), result.block_offset(rb),
                           result.block_size(cb), result.block_size(rb)) = value.adjoint();
    };

    const Matrix lambda1_star = mom.lambda1.adjoint();
    const Matrix lambda1_bar = mom.lambda1.conjugate();
    const Matrix lambda2 = mom.lambda2_star.adjoint();
    const Matrix alpha_tensor_one = tensor_left(g.alpha);
    const Matrix gamma_tensor_one = tensor_left(g.gamma);
    const Matrix one_tensor_gamma = tensor_right(g.gamma);
    const Matrix one_tensor_alpha = tensor_right(g.alpha);

    put(1, 1, gamma2);
    put(1, 2, lambda1_star);
    put(1, 3, lambda1_star * ex + alpha_tensor_one * bsum);
    put(1, 4, lambda2);
    put(1, 5, mom.a1.adjoint());
    put(1, 6, mom.a2_star.adjoint());
    put(1, 7, alpha_tensor_one * beta1s);
    put(2, 2, ex * mom.delta + gamma_tensor_one);
    put(2, 3, mom.delta.adjoint() + gamma_tensor_one * (bsum + ex));
    put(2, 4, ex * lambda1_bar + alpha_tensor_one * (id2 + ex));
    put(2, 5, mom.q1.adjoint());
    put(2, 6, mom.q2.adjoint());
    put(2, 7, gamma_tensor_one * beta1s);
    put(3, 3, mom.delta * ex + one_tensor_gamma * bsum + bsum * one_tensor_gamma +
                  bsum + one_tensor_gamma);
    put(3, 4, lambda1_bar + one_tensor_alpha * (id2 + ex) + bsum * one_tensor_alpha);
    put(3, 5, ex * mom.q1.adjoint() + beta1s * g.b.adjoint());
    put(3, 6, ex * mom.q2.adjoint() + beta1s * g.b.transpose());
    put(3, 7, (id2 + one_tensor_gamma) * beta1s);
    put(4, 4, gamma2.transpose() +
                  (id2 + tensor_left(g.gamma.conjugate()) +
                   tensor_right(g.gamma.conjugate())) * (id2 + ex));
    put(4, 5, mom.a2_star.adjoint().conjugate());
    {
        // conj(A1)^* plus the displacement correction (1 + Ex)(conj(b) (x) 1) beta2^*
        Matrix b46 = mom.a1.transpose();
        Matrix corr = Matrix::Zero(n * n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) corr(i * n + j, j) = std::conj(g.b(i));
        put(4, 6, b46 + (id2 + ex) * corr);
    }
    put(4, 7, tensor_left(g.alpha.adjoint()) * beta1s);
    put(5, 5, g.gamma);
    put(5, 6, g.alpha);
    put(5, 7, g.b);
    put(6, 6, Matrix::Identity(n, n) + g.gamma.conjugate());
    put(6, 7, g.b.conjugate());
    put(7, 7, Matrix::Identity(1, 1));
    return result;
}

namespace {

// column monomial attached to each generalized-2-pdm basis index
struct BasisOp {
    int first = -1;   // operator id or -1
    int second = -1;  // operator id or -1 (block 1..4 only)
};

std::vector<BasisOp> gen2pdm_basis_ops(int n) {
    std::vector<BasisOp> ops;
    auto an = [&](int mode0) { return mode0; };
    auto cr = [&](int mode0) { return mode0 + n; };
    // blocks 1..4: a*a*, a*a, aa*, aa with pair index (i,j) -> i*n + j
    for (int kind = 0; kind < 4; ++kind)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                BasisOp op;
                switch (kind) {
                    case 0: op = {cr(i), cr(j)}; break;
                    case 1: op = {cr(i), an(j)}; break;
                    case 2: op = {an(i), cr(j)}; break;
                    case 3: op = {an(i), an(j)}; break;
                }
                ops.push_back(op);
            }
    for (int i = 0; i < n; ++i) ops.push_back({cr(i), -1});
    for (int i = 0; i < n; ++i) ops.push_back({an(i), -1});
    ops.push_back({-1, -1});
    return ops;
}

}  // namespace

Gen2Pdm gen2pdm_from_definition(const ModeSpace& space, const Matrix& rho,
                                const Tolerances& tol) {
    if (space.statistics() != Statistics::Boson)
        throw InvalidInput("gen2pdm_from_definition: boson space required");
    require_density_matrix(rho, tol);
    require_pair_safe(space, rho, 4, tol, "gen2pdm_from_definition");
    const int n = space.n_modes();
    const MomentCache c(space, rho);
    const auto ops = gen2pdm_basis_ops(n);
    Gen2Pdm result;
    result.n = n;
    const Eigen::Index dim = static_cast<Eigen::Index>(ops.size());
    result.m = Matrix(dim, dim);
    auto conj_id = [&](int id) { return id < n ? id + n : id - n; };
    for (Eigen::Index row = 0; row < dim; ++row) {
        // adjoint of the row monomial, factors reversed and conjugated
        const BasisOp r = ops[static_cast<std::size_t>(row)];
        for (Eigen::Index col = 0; col < dim; ++col) {
            const BasisOp cop = ops[static_cast<std::size_t>(col)];
            std::vector<int> word;
            if (cop.first >= 0) word.push_back(cop.first);
            if (cop.second >= 0) word.push_back(cop.second);
            if (r.second >= 0) word.push_back(conj_id(r.second));
            if (r.first >= 0) word.push_back(conj_id(r.first));
            Complex value;
            switch (word.size()) {
                case 0: value = Complex(1.0, 0.0); break;
                case 1: value = c.mom1(word[0]); break;
                case 2: value = c.mom2(word[0], word[1]); break;
                case 3: value = c.mom3(word[0], word[1], word[2]); break;
                default: value = c.mom4(word[0], word[1], word[2], word[3]); break;
            }
            result.m(row, col) = value;
        }
    }
    result.m = (result.m + result.m.adjoint()) / 2.0;
    return result;
}

EigReport check_gen2pdm_psd(const Gen2Pdm& g, double tol) {
    EigReport r;
    auto [eig, vec] = min_eigenpair((g.m + g.m.adjoint()) / 2.0);
    r.min_eig = eig;
    const double scale = std::max(1.0, spectral_norm(g.m));
    r.ok = eig >= -tol * scale;
    if (!r.ok) r.witness = vec;
    return r;
}

Matrix polynomial_from_coefficients(const ModeSpace& space, const Vector& coeffs) {
    const int n = space.n_modes();
    const auto ops = gen2pdm_basis_ops(n);
    if (coeffs.size() != static_cast<Eigen::Index>(ops.size()))
        throw InvalidInput("polynomial_from_coefficients: wrong coefficient count");
    const Eigen::Index d = space.dim();
    auto sparse_of = [&](int id) -> const ModeSpace::SparseOp& {
        return id < n ? space.annihilator_sparse(id + 1) : space.creator_sparse(id - n + 1);
    };
    Matrix p = Matrix::Zero(d, d);
    for (std::size_t idx = 0; idx < ops.size(); ++idx) {
        const Complex c = coeffs(static_cast<Eigen::Index>(idx));
        if (c == Complex(0.0, 0.0)) continue;
        const BasisOp& op = ops[idx];
        if (op.first < 0) {
            p.diagonal().array() += c;
        } else if (op.second < 0) {
            p += c * sparse_of(op.first);
        } else {
            p += c * ModeSpace::SparseOp(sparse_of(op.first) * sparse_of(op.second));
        }
    }
    return p;
}

namespace {

PositivityReport run_positivity(const Gen2Pdm& g, const ModeSpace* space,
                                const Matrix* rho, int n_samples, std::uint64_t seed,
                                double tol) {
    PositivityReport report;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const Eigen::Index dim = g.dim();
    report.min_sampled = std::numeric_limits<double>::infinity();
    report.ok = true;
    report.oracle_agrees = true;

    auto evaluate = [&](const Vector& x) {
        const double form = std::real(x.dot(g.m * x));
        if (space && rho) {
            const Matrix p = polynomial_from_coefficients(*space, x);
            const double oracle = std::real((*rho * p * p.adjoint()).trace());
            report.max_oracle_gap = std::max(report.max_oracle_gap,
                                             std::abs(form - oracle));
            const double scale = std::max({1.0, std::abs(form), std::abs(oracle)});
            if (std::abs(form - oracle) > 1e-7 * scale) report.oracle_agrees = false;
        }
        if (form < report.min_sampled) {
            report.min_sampled = form;
            report.witness = x;
        }
        if (form < -tol * std::max(1.0, spectral_norm(g.m))) report.ok = false;
    };

    for (int s = 0; s < n_samples; ++s) {
        Vector x(dim);
        for (Eigen::Index i = 0; i < dim; ++i) x(i) = Complex(normal(rng), normal(rng));
        x /= x.norm();
        evaluate(x);
    }
    const EigReport psd = check_gen2pdm_psd(g, tol);
    if (!psd.ok) evaluate(psd.witness);  // witness-driven polynomial
    report.psd_agrees = psd.ok == report.ok;
    return report;
}

}  // namespace

PositivityReport polynomial_positivity_harness(const ModeSpace& space, const Matrix& rho,
                                               const Gen2Pdm& g, int n_samples,
                                               std::uint64_t seed, double tol) {
    return run_positivity(g, &space, &rho, n_samples, seed, tol);
}

PositivityReport polynomial_positivity_verdict(const Gen2Pdm& g, int n_samples,
                                               std::uint64_t seed, double tol) {
    return run_positivity(g, nullptr, nullptr, n_samples, seed, tol);
}

}  // namespace qflab
