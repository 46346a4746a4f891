#include "qflab/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

namespace qflab {

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() <= 16 || m.cols() <= 16) return m.jacobiSvd().singularValues()(0);
    return m.bdcSvd().singularValues()(0);
}

double hermiticity_defect(const Matrix& m) {
    return spectral_norm(m - m.adjoint());
}

double min_eigenvalue(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

std::pair<double, Vector> min_eigenpair(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
    return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

bool is_psd(const Matrix& hermitian, double floor) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
    const auto& vals = es.eigenvalues();
    double scale = std::max(std::abs(vals(0)), std::abs(vals(vals.size() - 1)));
    scale = std::max(scale, 1.0);
    return vals(0) >= -floor * scale;
}

Matrix hermitian_sqrt_psd(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    Eigen::VectorXd vals = es.eigenvalues();
    const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        if (vals(i) < 0.0) {
            if (vals(i) < -1e-12 * scale)
                throw InvalidInput("hermitian_sqrt_psd: matrix is not positive semi-definite");
            vals(i) = 0.0;
        }
        vals(i) = std::sqrt(vals(i));
    }
    return es.eigenvectors() * vals.cast<Complex>().asDiagonal() *
           es.eigenvectors().adjoint();
}

Matrix matrix_exp(const Matrix& m) { return m.exp(); }

Matrix matrix_log(const Matrix& m) { return m.log(); }

namespace {

Complex pfaffian_expand(const Matrix& m, std::vector<int>& alive, int n_alive) {
    if (n_alive == 0) return Complex(1.0, 0.0);
    // first alive index
    int first = -1;
    for (std::size_t i = 0; i < alive.size(); ++i) {
        if (alive[i]) { first = static_cast<int>(i); break; }
    }
    alive[first] = 0;
    Complex acc(0.0, 0.0);
    double sign = 1.0;
    for (std::size_t j = first + 1; j < alive.size(); ++j) {
        if (!alive[j]) continue;
        const Complex mij = m(first, static_cast<Eigen::Index>(j));
        if (mij != Complex(0.0, 0.0)) {
            alive[j] = 0;
            acc += sign * mij * pfaffian_expand(m, alive, n_alive - 2);
            alive[j] = 1;
        }
        sign = -sign;
    }
    alive[first] = 1;
    return acc;
}

}  // namespace

Complex pfaffian(const Matrix& m, double antisymmetry_tol) {
    if (m.rows() != m.cols()) throw NotAntisymmetric("pfaffian: matrix is not square");
    const Eigen::Index n = m.rows();
    if (n == 0) return Complex(1.0, 0.0);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m + m.transpose()).cwiseAbs().maxCoeff() > antisymmetry_tol * scale)
        throw NotAntisymmetric("pfaffian: matrix is not antisymmetric");
    if (n % 2 == 1) return Complex(0.0, 0.0);
    std::vector<int> alive(static_cast<std::size_t>(n), 1);
    return pfaffian_expand(m, alive, static_cast<int>(n));
}

Complex permanent(const Matrix& m) {
    const Eigen::Index n = m.rows();
    if (n != m.cols()) throw InvalidInput("permanent: matrix is not square");
    if (n == 0) return Complex(1.0, 0.0);
    // Ryser with Gray-code subset enumeration
    Complex total(0.0, 0.0);
    Vector row_sum = Vector::Zero(n);
    std::uint64_t gray = 0;
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const std::uint64_t n_subsets = (1ULL << n) - 1;
    for (std::uint64_t k = 1; k <= n_subsets; ++k) {
        const std::uint64_t new_gray = k ^ (k >> 1);
        const std::uint64_t diff = new_gray ^ gray;
        int bit = 0;
        while (!((diff >> bit) & 1ULL)) ++bit;
        if (new_gray & diff)
            row_sum += m.col(bit);
        else
            row_sum -= m.col(bit);
        gray = new_gray;
        Complex prod(1.0, 0.0);
        for (Eigen::Index i = 0; i < n; ++i) prod *= row_sum(i);
        total += ((std::popcount(new_gray) % 2 == 0) ? sign : -sign) * prod;
    }
    return total;
}

}  // namespace qflab
