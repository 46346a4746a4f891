#include "qflab/bogoliubov.hpp"

#include "qflab/linalg.hpp"
#include "qflab/random.hpp"

#include <doctest.h>

using namespace qflab;

namespace {

// spectral norm of the operator compressed to total occupation <= limit
double sandwiched_norm(const ModeSpace& space, const Matrix& op, int limit) {
    std::vector<Eigen::Index> safe;
    for (Eigen::Index i = 0; i < space.dim(); ++i)
        if (space.total_occupation(i) <= limit) safe.push_back(i);
    Matrix block(safe.size(), safe.size());
    for (std::size_t a = 0; a < safe.size(); ++a)
        for (std::size_t c = 0; c < safe.size(); ++c)
            block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c)) =
                op(safe[a], safe[c]);
    return spectral_norm(block);
}

double conjugation_residual(const BogoliubovMap& map, const ModeSpace& space,
                            const Matrix& uu, int safe_occupation) {
    // UU [a*(f) + a(conj(g))] UU* = a*(uf + vg) + a(v conj(f) + u conj(g))
    Rng rng(99);
    const int n = map.n_modes();
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const Vector f = rng.vector(n, 0.7);
        const Vector g = rng.vector(n, 0.7);
        const Matrix lhs =
            uu * (space.creator(f) + space.annihilator(g.conjugate())) * uu.adjoint();
        const Matrix rhs = space.creator(map.u * f + map.v * g) +
                           space.annihilator(map.v * f.conjugate() + map.u * g.conjugate());
        worst = std::max(worst, sandwiched_norm(space, lhs - rhs, safe_occupation));
    }
    return worst;
}

}  // namespace

TEST_CASE("relation residuals vanish for the identity and the standard squeeze") {
    CHECK(verify_relations(BogoliubovMap::identity(3, Statistics::Boson)).max() == 0.0);
    CHECK(verify_relations(BogoliubovMap::identity(3, Statistics::Fermion)).max() == 0.0);

    const double r = 0.8;
    BogoliubovMap squeeze{Matrix::Constant(1, 1, std::cosh(r)),
                          Matrix::Constant(1, 1, std::sinh(r)), Statistics::Boson};
    CHECK(verify_relations(squeeze).max() < 1e-12);  // cosh^2 - sinh^2 = 1

    const double theta = 0.6;
    Matrix v = Matrix::Zero(2, 2);
    v(0, 1) = std::sin(theta);
    v(1, 0) = -std::sin(theta);
    BogoliubovMap rot{Matrix::Identity(2, 2) * std::cos(theta), v, Statistics::Fermion};
    CHECK(verify_relations(rot).max() < 1e-12);
}

TEST_CASE("invalid map is rejected") {
    BogoliubovMap bad{Matrix::Identity(2, 2) * 2.0, Matrix::Zero(2, 2), Statistics::Fermion};
    CHECK_THROWS_AS(require_valid(bad), InvalidBogoliubov);
}

TEST_CASE("inverse composes to the identity") {
    CHECK(spectral_norm(inverse(BogoliubovMap::identity(2, Statistics::Boson)).block() -
                        Matrix::Identity(4, 4)) == 0.0);

    const double r = 0.5;
    BogoliubovMap squeeze{Matrix::Constant(1, 1, std::cosh(r)),
                          Matrix::Constant(1, 1, std::sinh(r)), Statistics::Boson};
    const BogoliubovMap inv = inverse(squeeze);
    CHECK(std::abs(inv.u(0, 0) - std::cosh(-r)) < 1e-12);
    CHECK(std::abs(inv.v(0, 0) - std::sinh(-r)) < 1e-12);

    Rng rng(7);
    for (auto stat : {Statistics::Boson, Statistics::Fermion}) {
        for (int trial = 0; trial < 10; ++trial) {
            const BogoliubovMap u = rng.bogoliubov(3, stat);
            CHECK(verify_relations(u).max() < 1e-10);
            const Matrix prod = compose(inverse(u), u).block();
            CHECK(spectral_norm(prod - Matrix::Identity(6, 6)) < 1e-10);
        }
    }
}

TEST_CASE("fermion inverse is the adjoint map") {
    Rng rng(11);
    const BogoliubovMap u = rng.bogoliubov(3, Statistics::Fermion);
    CHECK(spectral_norm(u.block().adjoint() * u.block() - Matrix::Identity(6, 6)) < 1e-10);
    CHECK(spectral_norm(inverse(u).block() - u.block().adjoint()) < 1e-12);
}

TEST_CASE("identity map implements as the identity operator") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Fermion);
    const Matrix uu = implement_unitary(BogoliubovMap::identity(2, Statistics::Fermion), space);
    CHECK(spectral_norm(uu - Matrix::Identity(space.dim(), space.dim())) < 1e-12);
}

TEST_CASE("fermion particle-hole swap sends the vacuum to the filled state") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Fermion);
    BogoliubovMap swap{Matrix::Zero(2, 2), Matrix::Identity(2, 2), Statistics::Fermion};
    CHECK(verify_relations(swap).max() < 1e-12);
    const Matrix uu = implement_unitary(swap, space);
    const Vector image = uu * space.vacuum();
    const Vector filled = space.basis_vector(space.index_of({1, 1}));
    CHECK(std::abs(std::abs(image.dot(filled)) - 1.0) < 1e-10);
    CHECK(conjugation_residual(swap, space, uu, 2) < 1e-10);
}

TEST_CASE("single-mode particle-hole swap is not a single exponential") {
    const ModeSpace space = ModeSpace::build(1, Statistics::Fermion);
    BogoliubovMap swap{Matrix::Zero(1, 1), Matrix::Identity(1, 1), Statistics::Fermion};
    CHECK(verify_relations(swap).max() < 1e-12);
    CHECK_THROWS_AS(implement_unitary(swap, space), BranchAmbiguity);
}

TEST_CASE("conjugation identity holds for random maps") {
    Rng rng(13);
    {
        const ModeSpace space = ModeSpace::build(3, Statistics::Fermion);
        for (int trial = 0; trial < 5; ++trial) {
            const BogoliubovMap u = rng.bogoliubov(3, Statistics::Fermion);
            const Matrix uu = implement_unitary(u, space);
            CHECK(spectral_norm(uu * uu.adjoint() -
                                Matrix::Identity(space.dim(), space.dim())) < 1e-10);
            CHECK(conjugation_residual(u, space, uu, 3) < 1e-8);
        }
    }
    {
        const ModeSpace space = ModeSpace::build(2, Statistics::Boson, 20);
        for (int trial = 0; trial < 3; ++trial) {
            const BogoliubovMap u = rng.bogoliubov(2, Statistics::Boson, 0.04);
            const Matrix uu = implement_unitary(u, space);
            CHECK(spectral_norm(uu * uu.adjoint() -
                                Matrix::Identity(space.dim(), space.dim())) < 1e-10);
            CHECK(conjugation_residual(u, space, uu, 3) < 1e-8);
        }
    }
}

TEST_CASE("boson squeeze conjugation at the quoted scale") {
    const ModeSpace space = ModeSpace::build(1, Statistics::Boson, 18);
    const double r = 0.2;
    BogoliubovMap squeeze{Matrix::Constant(1, 1, std::cosh(r)),
                          Matrix::Constant(1, 1, std::sinh(r)), Statistics::Boson};
    const Matrix uu = implement_unitary(squeeze, space);
    CHECK(conjugation_residual(squeeze, space, uu, 3) <= 1e-8);
}

TEST_CASE("excessive squeezing trips the cutoff guard") {
    const ModeSpace space = ModeSpace::build(1, Statistics::Boson, 6);
    const double r = 2.5;
    BogoliubovMap squeeze{Matrix::Constant(1, 1, std::cosh(r)),
                          Matrix::Constant(1, 1, std::sinh(r)), Statistics::Boson};
    CHECK_THROWS_AS(implement_unitary(squeeze, space), CutoffUnsafe);
}

TEST_CASE("implementation respects composition up to a global phase") {
    Rng rng(17);
    {
        const ModeSpace space = ModeSpace::build(2, Statistics::Fermion);
        for (int trial = 0; trial < 20; ++trial) {
            const BogoliubovMap a = rng.bogoliubov(2, Statistics::Fermion, 0.4);
            const BogoliubovMap b = rng.bogoliubov(2, Statistics::Fermion, 0.4);
            const Matrix lhs = implement_unitary(compose(a, b), space);
            const Matrix rhs = implement_unitary(a, space) * implement_unitary(b, space);
            Eigen::Index imax = 0, jmax = 0;
            rhs.cwiseAbs().maxCoeff(&imax, &jmax);
            const Complex phase = lhs(imax, jmax) / rhs(imax, jmax);
            CHECK(std::abs(std::abs(phase) - 1.0) < 1e-8);
            CHECK(spectral_norm(lhs - phase * rhs) < 1e-8);
        }
    }
    {
        const ModeSpace space = ModeSpace::build(1, Statistics::Boson, 20);
        for (int trial = 0; trial < 20; ++trial) {
            const BogoliubovMap a = rng.bogoliubov(1, Statistics::Boson, 0.06);
            const BogoliubovMap b = rng.bogoliubov(1, Statistics::Boson, 0.06);
            const Matrix lhs = implement_unitary(compose(a, b), space);
            const Matrix rhs = implement_unitary(a, space) * implement_unitary(b, space);
            const Complex phase = lhs(0, 0) / rhs(0, 0);
            CHECK(std::abs(std::abs(phase) - 1.0) < 1e-7);
            CHECK(sandwiched_norm(space, lhs - phase * rhs, 5) < 1e-7);
        }
    }
}

TEST_CASE("weyl operator basics") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, 12);
    const Matrix w0 = weyl_operator(Vector::Zero(2), space);
    CHECK(spectral_norm(w0 - Matrix::Identity(space.dim(), space.dim())) < 1e-12);

    Rng rng(19);
    const Vector f = rng.vector(2, 0.3);
    const Matrix w = weyl_operator(f, space);
    CHECK(spectral_norm(w.adjoint() - weyl_operator(Vector(-f), space)) < 1e-12);
    CHECK(spectral_norm(w * w.adjoint() - Matrix::Identity(space.dim(), space.dim())) < 1e-12);
}

TEST_CASE("weyl transformation shifts ladder operators by inner products") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, 16);
    Rng rng(23);
    const Vector g = rng.vector(2, 0.15);
    const Vector f = rng.vector(2, 0.8);
    const Matrix w = weyl_transformation(g, space);
    const Matrix lhs = w * space.creator(f) * w.adjoint();
    const Matrix rhs = space.creator(f) +
                       g.dot(f) * Matrix::Identity(space.dim(), space.dim());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < space.dim(); ++i)
        if (space.total_occupation(i) <= 3)
            worst = std::max(worst, ((lhs - rhs) * space.basis_vector(i)).norm());
    CHECK(worst < 1e-8);
}

TEST_CASE("weyl commutation relation") {
    const ModeSpace space = ModeSpace::build(1, Statistics::Boson, 16);
    Rng rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        const Vector f = rng.vector(1, 0.15);
        const Vector g = rng.vector(1, 0.15);
        const Matrix lhs = weyl_operator(f, space) * weyl_operator(g, space);
        const Complex phase = std::exp(Complex(0, -0.5 * std::imag(f.dot(g))));
        const Matrix rhs = phase * weyl_operator(Vector(f + g), space);
        double worst = 0.0;
        for (Eigen::Index i = 0; i < space.dim(); ++i)
            if (space.total_occupation(i) <= 4)
                worst = std::max(worst, ((lhs - rhs) * space.basis_vector(i)).norm());
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("second quantization: identity, fermion product trace, boson geometric trace") {
    const ModeSpace fspace = ModeSpace::build(2, Statistics::Fermion);
    CHECK(spectral_norm(second_quantize(Matrix::Identity(2, 2), fspace) -
                        Matrix::Identity(4, 4)) < 1e-14);

    Matrix b = Matrix::Zero(2, 2);
    b(0, 0) = 0.3;
    b(1, 1) = 0.8;
    const Complex tr = second_quantize_trace(b, fspace);
    CHECK(std::abs(tr - Complex(1.3 * 1.8, 0.0)) < 1e-12);

    const int cutoff = 7;
    const ModeSpace bspace = ModeSpace::build(1, Statistics::Boson, cutoff);
    const double c = 0.4;
    double geometric = 0.0;
    for (int j = 0; j <= cutoff; ++j) geometric += std::pow(c, j);
    CHECK(std::abs(second_quantize_trace(Matrix::Constant(1, 1, c), bspace) -
                   Complex(geometric, 0.0)) < 1e-12);

    CHECK_THROWS_AS(second_quantize(Matrix::Identity(1, 1) * 1.2, bspace), InvalidInput);
}

TEST_CASE("second quantization of a rotated diagonal matches the rotated operator") {
    Rng rng(31);
    const ModeSpace space = ModeSpace::build(2, Statistics::Fermion);
    const Matrix h = rng.hermitian(2, 0.7);
    const Matrix w = matrix_exp(Complex(0, 1) * h);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 0.2;
    d(1, 1) = 0.6;
    const Matrix lhs = second_quantize(w * d * w.adjoint(), space);
    const BogoliubovMap rot = exp_generator(h, Matrix::Zero(2, 2), Statistics::Fermion);
    const Matrix uu = implement_unitary(rot, space);
    const Matrix rhs1 = uu * second_quantize(d, space) * uu.adjoint();
    const Matrix rhs2 = uu.adjoint() * second_quantize(d, space) * uu;
    const double gap = std::min(spectral_norm(lhs - rhs1), spectral_norm(lhs - rhs2));
    CHECK(gap < 1e-9);
}

TEST_CASE("map built from pure data reproduces it: scalar squeeze") {
    const double r = 0.4;
    GaussianData g;
    g.statistics = Statistics::Boson;
    g.gamma = Matrix::Constant(1, 1, std::sinh(r) * std::sinh(r));
    g.alpha = Matrix::Constant(1, 1, std::cosh(r) * std::sinh(r));
    g.b = Vector::Zero(1);
    const BogoliubovMap u = bogoliubov_from_gaussian(g);
    CHECK(std::abs(u.u(0, 0) - std::cosh(r)) < 1e-12);
    CHECK(std::abs(u.v(0, 0) - std::sinh(r)) < 1e-12);
}

TEST_CASE("map built from pure data: vacuum and fully filled fermion state") {
    GaussianData vac;
    vac.statistics = Statistics::Boson;
    vac.gamma = Matrix::Zero(2, 2);
    vac.alpha = Matrix::Zero(2, 2);
    vac.b = Vector::Zero(2);
    const BogoliubovMap id = bogoliubov_from_gaussian(vac);
    CHECK(spectral_norm(id.block() - Matrix::Identity(4, 4)) < 1e-12);

    GaussianData full;
    full.statistics = Statistics::Fermion;
    full.gamma = Matrix::Identity(2, 2);
    full.alpha = Matrix::Zero(2, 2);
    full.b = Vector::Zero(2);
    const BogoliubovMap swap = bogoliubov_from_gaussian(full);
    CHECK(spectral_norm(swap.u) < 1e-12);
    CHECK(spectral_norm(swap.v * swap.v.adjoint() - Matrix::Identity(2, 2)) < 1e-10);
}

TEST_CASE("map built from pure data satisfies U diag(0,1) U* = gen1pdm") {
    Rng rng(37);
    for (auto stat : {Statistics::Boson, Statistics::Fermion}) {
        for (int trial = 0; trial < 10; ++trial) {
            const GaussianData g = rng.pure_gaussian(3, stat, 0.5);
            const BogoliubovMap u = bogoliubov_from_gaussian(g);
            CHECK(verify_relations(u).max() < 1e-8);
            Matrix d = Matrix::Zero(6, 6);
            d.bottomRightCorner(3, 3) = Matrix::Identity(3, 3);
            CHECK(spectral_norm(u.block() * d * u.block().adjoint() - gen1pdm(g)) <= 1e-8);
            // tr(v* v) = tr(gamma)
            CHECK(std::abs((u.v.adjoint() * u.v).trace() - g.gamma.trace()) < 1e-8);
        }
    }
}

TEST_CASE("mixed data is rejected as not pure") {
    Rng rng(41);
    const GaussianData g = rng.mixed_gaussian(2, Statistics::Fermion, 0.4);
    CHECK_THROWS_AS(bogoliubov_from_gaussian(g), NotPure);
}

TEST_CASE("pure-state round trip through the Fock space") {
    Rng rng(43);
    // fermions: rho = UU |vac><vac| UU* carries gen1pdm U D U*
    {
        const ModeSpace space = ModeSpace::build(3, Statistics::Fermion);
        for (int trial = 0; trial < 5; ++trial) {
            const GaussianData g = rng.pure_gaussian(3, Statistics::Fermion, 0.5);
            const BogoliubovMap u = bogoliubov_from_gaussian(g);
            const Matrix uu = implement_unitary(u, space);
            const Vector psi = uu * space.vacuum();
            const GaussianData back =
                gaussian_from_density_matrix(space, psi * psi.adjoint());
            CHECK(spectral_norm(back.gamma - g.gamma) <= 1e-7);
            CHECK(spectral_norm(back.alpha - g.alpha) <= 1e-7);
        }
    }
    // bosons: the implementation direction flips the sign of v
    {
        const ModeSpace space = ModeSpace::build(2, Statistics::Boson, 18);
        for (int trial = 0; trial < 3; ++trial) {
            const GaussianData g = rng.pure_gaussian(2, Statistics::Boson, 0.05);
            BogoliubovMap u = bogoliubov_from_gaussian(g);
            u.v = -u.v;
            const Matrix uu = implement_unitary(u, space);
            const Vector psi = uu * space.vacuum();
            const GaussianData back =
                gaussian_from_density_matrix(space, psi * psi.adjoint());
            CHECK(spectral_norm(back.gamma - g.gamma) <= 1e-7);
            CHECK(spectral_norm(back.alpha - g.alpha) <= 1e-7);
        }
    }
}
