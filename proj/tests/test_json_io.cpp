#include "qflab/json_io.hpp"

#include "qflab/linalg.hpp"
#include "qflab/random.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace qflab;

TEST_CASE("matrix and vector round trips") {
    Rng rng(3);
    const Matrix m = rng.matrix(3, 2);
    const Matrix back = matrix_from_json(matrix_to_json(m));
    CHECK((m - back).cwiseAbs().maxCoeff() == 0.0);

    const Vector v = rng.vector(4);
    CHECK((v - vector_from_json(vector_to_json(v))).norm() == 0.0);

    Json bad = matrix_to_json(m);
    bad["re"].erase(0);
    CHECK_THROWS_AS(matrix_from_json(bad), InvalidInput);
}

TEST_CASE("space descriptor round trip") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Boson, 7);
    const ModeSpace back = space_from_json(space_to_json(space));
    CHECK(back.n_modes() == 2);
    CHECK(back.statistics() == Statistics::Boson);
    CHECK(back.cutoff() == 7);
    CHECK(back.dim() == space.dim());
    CHECK_THROWS_AS(statistics_from_string("anyon"), InvalidInput);
}

TEST_CASE("gaussian data round trip") {
    Rng rng(5);
    const GaussianData g = rng.pure_gaussian(2, Statistics::Boson, 0.3, 0.4);
    const GaussianData back = gaussian_from_json(gaussian_to_json(g));
    CHECK(spectral_norm(back.gamma - g.gamma) == 0.0);
    CHECK(spectral_norm(back.alpha - g.alpha) == 0.0);
    CHECK((back.b - g.b).norm() == 0.0);
    CHECK(back.statistics == Statistics::Boson);
}

TEST_CASE("bogoliubov map round trip") {
    Rng rng(7);
    const BogoliubovMap u = rng.bogoliubov(2, Statistics::Fermion);
    const BogoliubovMap back = bogoliubov_from_json(bogoliubov_to_json(u));
    CHECK(spectral_norm(back.block() - u.block()) == 0.0);
}

TEST_CASE("model round trip validates") {
    TwoBodyHamiltonian h;
    h.statistics = Statistics::Boson;
    h.h = Matrix::Identity(1, 1);
    h.v = Matrix::Constant(1, 1, 0.2);
    h.drive = Vector::Constant(1, -0.5);
    const TwoBodyHamiltonian back = model_from_json(model_to_json(h));
    CHECK(back.statistics == Statistics::Boson);
    CHECK(back.v(0, 0) == Complex(0.2, 0.0));
    CHECK(back.drive(0) == Complex(-0.5, 0.0));

    Json bad = model_to_json(h);
    bad["h"]["re"][0] = 1.0;
    bad["h"]["im"][0] = 0.5;  // not Hermitian
    CHECK_THROWS_AS(model_from_json(bad), InvalidInput);
}

TEST_CASE("quasifree params round trip") {
    Rng rng(11);
    QuasifreeParams p = rng.quasifree_params(3, Statistics::Fermion, 0.4, true, false);
    const QuasifreeParams back = params_from_json(params_to_json(p));
    CHECK(spectral_norm(back.gen_a - p.gen_a) == 0.0);
    CHECK(spectral_norm(back.gen_b - p.gen_b) == 0.0);
    CHECK((back.mixing - p.mixing).norm() == 0.0);
    CHECK(back.occupied_modes == p.occupied_modes);
}

TEST_CASE("state specs realize and extract") {
    const ModeSpace space = ModeSpace::build(2, Statistics::Fermion);
    Json quasifree;
    quasifree["type"] = "quasifree";
    quasifree["params"] = params_to_json(QuasifreeParams::zero(2, Statistics::Fermion));
    const StateSpec spec = state_from_json(quasifree);
    const Matrix rho = state_to_density(spec, space);
    CHECK(std::abs(rho(0, 0) - Complex(1.0, 0.0)) < 1e-14);

    Json density;
    density["type"] = "density";
    density["matrix"] = matrix_to_json(rho);
    const GaussianData g = state_to_gaussian(state_from_json(density), &space);
    CHECK(g.gamma.cwiseAbs().maxCoeff() < 1e-14);

    Json gaussian = gaussian_to_json(g);
    CHECK(state_from_json(gaussian).kind == StateSpec::Kind::Gaussian);
    CHECK_THROWS_AS(state_to_density(state_from_json(gaussian), space), InvalidInput);
}

TEST_CASE("file IO and digests") {
    const std::string path = "qflab_test_io.json";
    Json j;
    j["x"] = 1.5;
    write_json_file(path, j);
    CHECK(load_json_file(path).at("x").get<double>() == 1.5);
    const std::string digest1 = file_digest(path);
    CHECK(!digest1.empty());
    write_json_file(path, j);
    CHECK(file_digest(path) == digest1);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_json_file(path), InvalidInput);
    CHECK_THROWS_AS(load_json_file("/nonexistent/x.json"), InvalidInput);
}
