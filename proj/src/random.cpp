#include "qflab/random.hpp"

#include <algorithm>

namespace qflab {

Matrix Rng::matrix(int rows, int cols, double scale) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = scale * complex_normal();
    return m;
}

Matrix Rng::hermitian(int n, double scale) {
    const Matrix m = matrix(n, n, scale);
    return (m + m.adjoint()) / 2.0;
}

Matrix Rng::symmetric(int n, double scale) {
    const Matrix m = matrix(n, n, scale);
    return (m + m.transpose()) / 2.0;
}

Matrix Rng::antisymmetric(int n, double scale) {
    const Matrix m = matrix(n, n, scale);
    return (m - m.transpose()) / 2.0;
}

Vector Rng::vector(int n, double scale) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = scale * complex_normal();
    return v;
}

BogoliubovMap Rng::bogoliubov(int n, Statistics statistics, double scale) {
    const Matrix a = hermitian(n, scale);
    const Matrix b = statistics == Statistics::Boson ? symmetric(n, scale)
                                                     : antisymmetric(n, scale);
    return exp_generator(a, b, statistics);
}

GaussianData Rng::pure_gaussian(int n, Statistics statistics, double scale,
                                double displacement_scale) {
    const BogoliubovMap u = bogoliubov(n, statistics, scale);
    GaussianData seed;
    seed.statistics = statistics;
    seed.gamma = Matrix::Zero(n, n);
    seed.alpha = Matrix::Zero(n, n);
    seed.b = Vector::Zero(n);
    if (statistics == Statistics::Fermion) {
        // random even-parity Slater seed; odd-parity states are not reachable
        // from the vacuum by a single quadratic exponential
        std::vector<int> bits(static_cast<std::size_t>(n));
        int parity = 0;
        for (int k = 0; k < n; ++k) parity += bits[static_cast<std::size_t>(k)] = integer(0, 1);
        if (parity % 2 == 1) bits[0] = 1 - bits[0];
        Vector occ = Vector::Zero(n);
        for (int k = 0; k < n; ++k) occ(k) = bits[static_cast<std::size_t>(k)];
        seed.gamma = occ.asDiagonal();
    }
    const Matrix ub = u.block();
    const Matrix gt = ub * gen1pdm(seed) * ub.adjoint();
    GaussianData out;
    out.statistics = statistics;
    out.gamma = ((gt.topLeftCorner(n, n) + gt.topLeftCorner(n, n).adjoint()) / 2.0).eval();
    out.alpha = gt.topRightCorner(n, n);
    out.b = Vector::Zero(n);
    if (statistics == Statistics::Boson && displacement_scale > 0.0) {
        out.b = vector(n, displacement_scale);
        out.gamma += out.b * out.b.adjoint();
        out.alpha += out.b * out.b.transpose();
    }
    return out;
}

GaussianData Rng::mixed_gaussian(int n, Statistics statistics, double scale,
                                 double min_fill, double max_fill) {
    const BogoliubovMap u = bogoliubov(n, statistics, scale);
    GaussianData seed;
    seed.statistics = statistics;
    Vector occ(n);
    for (int k = 0; k < n; ++k) occ(k) = uniform(min_fill, max_fill);
    seed.gamma = occ.asDiagonal();
    seed.alpha = Matrix::Zero(n, n);
    seed.b = Vector::Zero(n);
    const Matrix ub = u.block();
    const Matrix gt = ub * gen1pdm(seed) * ub.adjoint();
    GaussianData out;
    out.statistics = statistics;
    out.gamma = ((gt.topLeftCorner(n, n) + gt.topLeftCorner(n, n).adjoint()) / 2.0).eval();
    out.alpha = gt.topRightCorner(n, n);
    out.b = Vector::Zero(n);
    return out;
}

Matrix Rng::density_matrix(const ModeSpace& space, int max_occupation) {
    const Eigen::Index d = space.dim();
    Matrix amp(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            amp(i, j) = space.total_occupation(i) > max_occupation
                            ? Complex(0.0, 0.0)
                            : complex_normal();
    Matrix rho = amp * amp.adjoint();
    rho /= rho.trace().real();
    return rho;
}

QuasifreeParams Rng::quasifree_params(int n, Statistics statistics, double scale,
                                      bool mixed, bool displaced) {
    QuasifreeParams p = QuasifreeParams::zero(n, statistics);
    p.gen_a = hermitian(n, scale);
    p.gen_b = statistics == Statistics::Boson ? symmetric(n, scale)
                                              : antisymmetric(n, scale);
    if (statistics == Statistics::Boson && displaced)
        p.displacement = vector(n, scale);
    if (statistics == Statistics::Fermion) {
        for (int k = 1; k <= n; ++k)
            if (integer(0, 1)) p.occupied_modes.push_back(k);
    }
    if (mixed) {
        for (int k = 0; k < n; ++k) {
            const bool occupied =
                std::find(p.occupied_modes.begin(), p.occupied_modes.end(), k + 1) !=
                p.occupied_modes.end();
            p.mixing(k) = occupied ? 0.0 : uniform(0.1, 0.4);
        }
    }
    return p;
}

}  // namespace qflab
