#include "qflab/gaussian.hpp"

#include "qflab/bogoliubov.hpp"
#include "qflab/linalg.hpp"

#include <cmath>

namespace qflab {

void GaussianData::validate(const Tolerances& tol) const {
    const int n = n_modes();
    if (alpha.rows() != n || alpha.cols() != n || gamma.cols() != n)
        throw InvalidInput("GaussianData: inconsistent matrix dimensions");
    if (b.size() != n) throw InvalidInput("GaussianData: first moment has wrong length");
    const double scale = std::max(1.0, spectral_norm(gamma));
    if (hermiticity_defect(gamma) > tol.equality * scale)
        throw InvalidInput("GaussianData: gamma is not Hermitian");
    const double asym = statistics == Statistics::Boson
                            ? spectral_norm(alpha - alpha.transpose())
                            : spectral_norm(alpha + alpha.transpose());
    if (asym > tol.equality * std::max(1.0, spectral_norm(alpha)))
        throw InvalidInput("GaussianData: alpha has the wrong transposition symmetry");
    if (statistics == Statistics::Fermion && b.norm() > tol.equality)
        throw InvalidInput("GaussianData: fermion states are even, b must vanish");
    const Matrix gt = gen1pdm(*this);
    if (!is_psd(gt, tol.psd_floor))
        throw InvalidInput("GaussianData: generalized 1-pdm is not positive semi-definite");
    if (statistics == Statistics::Fermion) {
        const Matrix upper = Matrix::Identity(2 * n, 2 * n) - gt;
        if (!is_psd(upper, tol.psd_floor))
            throw InvalidInput("GaussianData: fermion generalized 1-pdm exceeds 1");
    }
}

Matrix gen1pdm(const GaussianData& g) {
    const int n = g.n_modes();
    Matrix gt(2 * n, 2 * n);
    const double sign = g.statistics == Statistics::Boson ? 1.0 : -1.0;
    gt.topLeftCorner(n, n) = g.gamma;
    gt.topRightCorner(n, n) = g.alpha;
    gt.bottomLeftCorner(n, n) = g.alpha.adjoint();
    gt.bottomRightCorner(n, n) = Matrix::Identity(n, n) + sign * g.gamma.conjugate();
    return gt;
}

Matrix further_gen1pdm(const GaussianData& g) {
    if (g.statistics != Statistics::Boson)
        throw InvalidInput("further_gen1pdm: defined for boson data");
    const int n = g.n_modes();
    Matrix gh = Matrix::Zero(2 * n + 1, 2 * n + 1);
    gh.topLeftCorner(2 * n, 2 * n) = gen1pdm(g);
    gh.block(0, 2 * n, n, 1) = g.b;
    gh.block(n, 2 * n, n, 1) = g.b.conjugate();
    gh.block(2 * n, 0, 1, n) = g.b.adjoint();
    gh.block(2 * n, n, 1, n) = g.b.transpose();
    gh(2 * n, 2 * n) = 1.0;
    return gh;
}

Matrix s_matrix(int n) {
    Matrix s = Matrix::Identity(2 * n, 2 * n);
    s.bottomRightCorner(n, n) = -Matrix::Identity(n, n);
    return s;
}

GaussianData gaussian_from_density_matrix(const ModeSpace& space, const Matrix& rho,
                                          const Tolerances& tol) {
    require_density_matrix(rho, tol);
    const int n = space.n_modes();
    if (space.statistics() == Statistics::Boson) {
        const double leak = space.occupation_mass_above(rho, space.cutoff() - 2);
        if (leak > tol.cutoff_mass)
            throw CutoffUnsafe("gaussian_from_density_matrix: occupation mass " +
                               std::to_string(leak) + " above cutoff - 2");
    }
    GaussianData g;
    g.statistics = space.statistics();
    g.gamma = Matrix(n, n);
    g.alpha = Matrix(n, n);
    g.b = Vector::Zero(n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            g.gamma(i - 1, j - 1) = (rho * space.creator(j) * space.annihilator(i)).trace();
            g.alpha(i - 1, j - 1) = (rho * space.annihilator(j) * space.annihilator(i)).trace();
        }
        if (space.statistics() == Statistics::Boson)
            g.b(i - 1) = (rho * space.annihilator(i)).trace();
    }
    // tidy the roundoff so the stored data carries the exact symmetries
    g.gamma = (g.gamma + g.gamma.adjoint()) / 2.0;
    if (space.statistics() == Statistics::Boson)
        g.alpha = (g.alpha + g.alpha.transpose()) / 2.0;
    else
        g.alpha = (g.alpha - g.alpha.transpose()) / 2.0;
    return g;
}

PurityReport check_boson_purity(const GaussianData& g, double tol) {
    if (g.statistics != Statistics::Boson)
        throw InvalidInput("check_boson_purity: boson data required");
    if (g.b.norm() > 1e-10)
        throw InvalidInput("check_boson_purity: data must be centered (b = 0)");
    PurityReport report;
    const Matrix gt = gen1pdm(g);
    const Matrix s = s_matrix(g.n_modes());
    report.residual = spectral_norm(gt * s * gt + gt);
    report.scalar_residual =
        spectral_norm(g.gamma * g.gamma + g.gamma - g.alpha * g.alpha.adjoint());
    report.pure = report.residual <= tol && report.scalar_residual <= tol;
    return report;
}

PurityReport check_fermion_purity(const GaussianData& g, double tol) {
    if (g.statistics != Statistics::Fermion)
        throw InvalidInput("check_fermion_purity: fermion data required");
    PurityReport report;
    const Matrix gt = gen1pdm(g);
    report.residual = spectral_norm(gt * gt - gt);
    report.scalar_residual = report.residual;
    report.pure = report.residual <= tol;
    return report;
}

PurityReport check_purity(const GaussianData& g, double tol) {
    return g.statistics == Statistics::Boson ? check_boson_purity(g, tol)
                                             : check_fermion_purity(g, tol);
}

Matrix q_kernel(const Vector& f) {
    const int n = static_cast<int>(f.size());
    Matrix q = Matrix::Zero(2 * n + 1, 2 * n + 1);
    q.topLeftCorner(n, n) = Matrix::Identity(n, n);
    q.block(n, n, n, n) = -Matrix::Identity(n, n);
    q.block(0, 2 * n, n, 1) = -f;
    q.block(n, 2 * n, n, 1) = f.conjugate();
    q.block(2 * n, 0, 1, n) = -f.adjoint();
    q.block(2 * n, n, 1, n) = f.transpose();
    q(2 * n, 2 * n) = -1.0;
    return q;
}

Matrix r_factor(const Vector& f) {
    const int n = static_cast<int>(f.size());
    Matrix r = Matrix::Zero(2 * n + 1, 2 * n + 1);
    r.topLeftCorner(n, n) = -Matrix::Identity(n, n);
    r.block(n, n, n, n) = -Matrix::Identity(n, n);
    r.block(2 * n, 0, 1, n) = f.adjoint();
    r.block(2 * n, n, 1, n) = f.transpose();
    r(2 * n, 2 * n) = 1.0;
    return r;
}

double further_purity_residual(const GaussianData& g) {
    if (g.statistics != Statistics::Boson)
        throw InvalidInput("further_purity_residual: boson data required");
    const Matrix gh = further_gen1pdm(g);
    const Matrix q = q_kernel(g.b);
    return spectral_norm(gh * q * gh + gh);
}

bool check_further_purity(const GaussianData& g, double tol) {
    return further_purity_residual(g) <= tol;
}

Matrix conjugate_gen1pdm(const Matrix& gt, const BogoliubovMap& u) {
    if (gt.rows() != 2 * u.n_modes())
        throw InvalidInput("conjugate_gen1pdm: dimension mismatch");
    const Matrix ub = u.block();
    return ub.adjoint() * gt * ub;
}

GaussianData recenter(const GaussianData& g) {
    if (g.statistics != Statistics::Boson) return g;
    GaussianData out = g;
    out.gamma = g.gamma - g.b * g.b.adjoint();
    out.alpha = g.alpha - g.b * g.b.transpose();
    out.b = Vector::Zero(g.n_modes());
    return out;
}

}  // namespace qflab
