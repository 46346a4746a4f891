#include "qflab/representability.hpp"

#include "qflab/bogoliubov.hpp"
#include "qflab/linalg.hpp"
#include "qflab/random.hpp"
#include "qflab/wick.hpp"

#include <doctest.h>

using namespace qflab;

namespace {

const int kCutoff = 16;

Matrix boson_vacuum_state(const ModeSpace& space) {
    const Vector vac = space.vacuum();
    return vac * vac.adjoint();
}

Matrix coherent_state(const ModeSpace& space, const Vector& phi) {
    const Matrix w = weyl_transformation(phi, space);
    return w.adjoint() * boson_vacuum_state(space) * w;
}

Matrix squeezed_state(const ModeSpace& space, Rng& rng, double scale) {
    const BogoliubovMap u = rng.bogoliubov(space.n_modes(), Statistics::Boson, scale);
    const Matrix uu = implement_unitary(u, space);
    return uu * boson_vacuum_state(space) * uu.adjoint();
}

Matrix thermal_state(const ModeSpace& space, const Matrix& c) {
    Matrix rho = second_quantize(c, space);
    return rho / rho.trace().real();
}

}  // namespace

TEST_CASE("exchange operator") {
    CHECK(spectral_norm(exchange_operator(1) - Matrix::Identity(1, 1)) == 0.0);
    const Matrix ex = exchange_operator(2);
    Vector e12 = Vector::Zero(4);
    e12(0 * 2 + 1) = 1.0;  // e_1 (x) e_2
    Vector e21 = Vector::Zero(4);
    e21(1 * 2 + 0) = 1.0;
    CHECK((ex * e12 - e21).norm() == 0.0);
    CHECK(spectral_norm(ex * ex - Matrix::Identity(4, 4)) == 0.0);
    CHECK(hermiticity_defect(ex) == 0.0);
}

TEST_CASE("two-pdm of the vacuum vanishes") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, 8);
    CHECK(two_pdm_from_state(space, boson_vacuum_state(space)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fermion Slater two-pdm is (1 - Ex)(gamma (x) gamma)") {
    const ModeSpace space = ModeSpace::build(3, Statistics::Fermion);
    const Vector slater = space.basis_vector(space.index_of({1, 1, 0}));
    const Matrix rho = slater * slater.adjoint();
    const Matrix gamma2 = two_pdm_from_state(space, rho);
    Matrix gamma = Matrix::Zero(3, 3);
    gamma(0, 0) = gamma(1, 1) = 1.0;
    Matrix tensor(9, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    tensor(i * 3 + j, k * 3 + l) = gamma(i, k) * gamma(j, l);
    const Matrix expected = (Matrix::Identity(9, 9) - exchange_operator(3)) * tensor;
    CHECK(spectral_norm(gamma2 - expected) < 1e-12);
    // fermion exchange antisymmetry, checked against the extraction
    CHECK(spectral_norm(exchange_operator(3) * gamma2 + gamma2) < 1e-12);
}

TEST_CASE("boson pair state diagonal matrix element") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, 8);
    const Vector pair = space.basis_vector(space.index_of({2, 0}));
    const Matrix gamma2 = two_pdm_from_state(space, pair * pair.adjoint());
    CHECK(std::abs(gamma2(0, 0) - Complex(2.0, 0.0)) < 1e-12);
    CHECK(spectral_norm(exchange_operator(2) * gamma2 - gamma2) <= 1e-10);
}

TEST_CASE("two-pdm trace identity") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, kCutoff);
    Rng rng(3);
    const Matrix rho = thermal_state(space, rng.hermitian(2, 0.01) + 0.06 * Matrix::Identity(2, 2));
    const Matrix gamma2 = two_pdm_from_state(space, rho);
    const Matrix number = space.number_operator();
    const Complex expected = (rho * (number * number - number)).trace();
    CHECK(std::abs(gamma2.trace() - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
}

TEST_CASE("admissibility checks") {
    const Matrix zero1 = Matrix::Zero(2, 2);
    const Matrix zero2 = Matrix::Zero(4, 4);
    CHECK(check_admissible(zero1, zero2, 0.0, Statistics::Boson).ok);

    Matrix bad_gamma = zero1;
    bad_gamma(0, 0) = -0.2;
    CHECK_FALSE(check_admissible(bad_gamma, zero2, -0.2, Statistics::Boson).gamma_psd);

    // a boson 2-pdm must commute with Ex; an antisymmetric block does not
    Matrix asym = Matrix::Zero(4, 4);
    asym(0 * 2 + 1, 0 * 2 + 1) = 1.0;
    asym(0 * 2 + 1, 1 * 2 + 0) = -1.0;
    asym(1 * 2 + 0, 0 * 2 + 1) = -1.0;
    asym(1 * 2 + 0, 1 * 2 + 0) = 1.0;
    CHECK_FALSE(check_admissible(zero1, asym, 0.0, Statistics::Boson).gamma2_exchange_symmetric);
}

TEST_CASE("P-condition") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, 8);
    const Matrix gamma2 = two_pdm_from_state(space, boson_vacuum_state(space));
    const EigReport vac = check_P(gamma2);
    CHECK(vac.ok);
    CHECK(vac.min_eig == 0.0);

    const EigReport bad = check_P(Matrix(-Matrix::Identity(4, 4)));
    CHECK_FALSE(bad.ok);
    CHECK(bad.min_eig == doctest::Approx(-1.0));
    CHECK(bad.witness.size() == 4);
}

TEST_CASE("G-condition margins and exact kernel") {
    // vacuum: both sides vanish for every A
    const Matrix zero1 = Matrix::Zero(2, 2);
    const Matrix zero2 = Matrix::Zero(4, 4);
    const GReport vac = check_G(zero1, zero2);
    CHECK(vac.ok);
    CHECK(std::abs(vac.min_eig) < 1e-14);

    // physical state: exact kernel nonnegative, trial margins consistent
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, kCutoff);
    Rng rng(5);
    const Matrix rho = squeezed_state(space, rng, 0.04);
    const GaussianData g = gaussian_from_density_matrix(space, rho);
    const Matrix gamma2 = two_pdm_from_state(space, rho);
    const GReport rep = check_G(g.gamma, gamma2);
    CHECK(rep.ok);
    CHECK(rep.min_eig >= -1e-10);
    CHECK(rep.worst_sampled >= rep.min_eig - 1e-10);
    CHECK(g_condition_margin(g.gamma, gamma2, g.gamma) >= -1e-10);

    // hand-built violating pair: gamma = 0 with an entangled pair block
    Matrix entangled = Matrix::Zero(4, 4);
    Vector psi = Vector::Zero(4);
    psi(0 * 2 + 1) = 1.0 / std::sqrt(2.0);
    psi(1 * 2 + 0) = 1.0 / std::sqrt(2.0);
    entangled = psi * psi.adjoint();
    const GReport bad = check_G(zero1, entangled);
    CHECK_FALSE(bad.ok);
    CHECK(bad.worst_sampled < -0.1);
    CHECK(g_condition_margin(zero1, entangled, bad.witness) ==
          doctest::Approx(bad.worst_sampled));
}

TEST_CASE("Q-condition") {
    const Matrix zero1 = Matrix::Zero(2, 2);
    const Matrix zero2 = Matrix::Zero(4, 4);
    CHECK(check_Q(zero1, zero2).ok);

    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, kCutoff);
    Rng rng(7);
    const Matrix rho = squeezed_state(space, rng, 0.04);
    const GaussianData g = gaussian_from_density_matrix(space, rho);
    const Matrix gamma2 = two_pdm_from_state(space, rho);
    CHECK(check_Q(g.gamma, gamma2).ok);

    const Matrix ex = exchange_operator(2);
    const Matrix bad = -3.0 * (Matrix::Identity(4, 4) + ex);
    CHECK_FALSE(check_Q(zero1, bad).ok);
}

TEST_CASE("generalized 2-pdm of the vacuum") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, 10);
    const Gen2Pdm g2 = assemble_gen2pdm(space, boson_vacuum_state(space));
    // moment blocks vanish
    CHECK(g2.block(1, 1).cwiseAbs().maxCoeff() == 0.0);
    CHECK(g2.block(5, 5).cwiseAbs().maxCoeff() == 0.0);
    CHECK(g2.block(5, 7).cwiseAbs().maxCoeff() == 0.0);
    // deterministic blocks survive
    CHECK(spectral_norm(g2.block(6, 6) - Matrix::Identity(2, 2)) == 0.0);
    CHECK(g2.block(7, 7)(0, 0) == Complex(1.0, 0.0));
    const Matrix b33 = g2.block(3, 3);
    CHECK(spectral_norm(b33 - basis_pair_sum(2)) == 0.0);
    const Matrix b44 = g2.block(4, 4);
    CHECK(spectral_norm(b44 - Matrix::Identity(4, 4) - exchange_operator(2)) == 0.0);
    CHECK(check_gen2pdm_psd(g2).ok);
}

TEST_CASE("generalized 2-pdm of a coherent state carries the first moment") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, kCutoff);
    Vector phi(2);
    phi << Complex(0.25, -0.1), Complex(0.1, 0.2);
    const Matrix rho = coherent_state(space, phi);
    const Gen2Pdm g2 = assemble_gen2pdm(space, rho);
    CHECK((g2.block(5, 7) - phi).norm() < 1e-9);
    CHECK((g2.block(6, 7) - phi.conjugate()).norm() < 1e-9);
    CHECK(check_gen2pdm_psd(g2).ok);
}

TEST_CASE("assembled blocks match the defining expectations") {
    // displaced squeezed state: every block formula exercised, including the
    // first-moment corrections
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, kCutoff);
    Rng rng(11);
    Matrix rho = squeezed_state(space, rng, 0.04);
    Vector phi(2);
    phi << Complex(0.2, 0.1), Complex(-0.15, 0.05);
    const Matrix w = weyl_transformation(phi, space);
    rho = w.adjoint() * rho * w;

    const Gen2Pdm assembled = assemble_gen2pdm(space, rho);
    const Gen2Pdm defining = gen2pdm_from_definition(space, rho);
    CHECK((assembled.m - defining.m).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(check_gen2pdm_psd(assembled).ok);
}

TEST_CASE("corner of the generalized 2-pdm is the further generalized 1-pdm") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, kCutoff);
    Vector phi(2);
    phi << Complex(0.3, 0.0), Complex(0.0, -0.2);
    const Matrix rho = coherent_state(space, phi);
    const Gen2Pdm g2 = assemble_gen2pdm(space, rho);
    const GaussianData g = gaussian_from_density_matrix(space, rho);
    const Matrix corner = g2.m.bottomRightCorner(5, 5);
    CHECK((corner - further_gen1pdm(g)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("positivity harness on physical and corrupted operators") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, kCutoff);
    Rng rng(13);
    Matrix c = Matrix::Zero(2, 2);
    c(0, 0) = 0.08;
    c(1, 1) = 0.05;
    const Matrix rho = thermal_state(space, c);
    const Gen2Pdm g2 = assemble_gen2pdm(space, rho);

    const PositivityReport rep = polynomial_positivity_harness(space, rho, g2, 100, 2024);
    CHECK(rep.ok);
    CHECK(rep.psd_agrees);
    CHECK(rep.oracle_agrees);
    CHECK(rep.min_sampled >= -1e-10);

    // corrupt one off-diagonal block: positivity must fail with a witness
    Gen2Pdm corrupted = g2;
    const Eigen::Index o5 = g2.block_offset(5);
    const Eigen::Index o7 = g2.block_offset(7);
    corrupted.m(o5, o7) += 2.0;
    corrupted.m(o7, o5) += 2.0;
    const PositivityReport bad = polynomial_positivity_verdict(corrupted, 100, 2024);
    CHECK_FALSE(bad.ok);
    CHECK(bad.psd_agrees);  // both routes agree the operator is not PSD
    CHECK(bad.witness.size() == corrupted.dim());
    CHECK(std::real(bad.witness.dot(corrupted.m * bad.witness)) < 0.0);
}

TEST_CASE("particle-conserving states: matrix conditions match the sampling verdict") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, kCutoff);
    Rng rng(17);
    Matrix c = rng.hermitian(2, 0.01) + 0.06 * Matrix::Identity(2, 2);
    const Matrix rho = thermal_state(space, c);
    const GaussianData g = gaussian_from_density_matrix(space, rho);
    const Matrix gamma2 = two_pdm_from_state(space, rho);

    const bool matrix_verdict = is_psd(g.gamma) && check_P(gamma2).ok &&
                                check_G(g.gamma, gamma2).ok;
    const Gen2Pdm g2 = assemble_gen2pdm(space, rho);
    const PositivityReport sampling = polynomial_positivity_harness(space, rho, g2, 100, 7);
    CHECK(matrix_verdict);
    CHECK(sampling.ok == matrix_verdict);
    // the Q-condition follows from P and gamma >= 0 on this corpus
    CHECK(check_Q(g.gamma, gamma2).ok);
}
