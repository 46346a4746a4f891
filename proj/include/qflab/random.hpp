#pragma once

#include "qflab/bhf.hpp"
#include "qflab/bogoliubov.hpp"
#include "qflab/gaussian.hpp"
#include "qflab/types.hpp"

#include <random>

namespace qflab {

/// Seeded generators for random matrices, Bogoliubov maps and test states.
/// All randomness flows through one engine so runs are reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::mt19937_64& engine() { return engine_; }
    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double normal() { return normal_(engine_); }
    Complex complex_normal() { return Complex(normal_(engine_), normal_(engine_)); }
    int integer(int lo, int hi) {  // inclusive bounds
        return std::uniform_int_distribution<int>(lo, hi)(engine_);
    }

    Matrix matrix(int rows, int cols, double scale = 1.0);
    Matrix hermitian(int n, double scale = 1.0);
    Matrix symmetric(int n, double scale = 1.0);
    Matrix antisymmetric(int n, double scale = 1.0);
    Vector vector(int n, double scale = 1.0);

    BogoliubovMap bogoliubov(int n, Statistics statistics, double scale = 0.5);

    /// Pure quasifree data: the Bogoliubov rotation of the vacuum, plus an
    /// optional first moment for bosons.
    GaussianData pure_gaussian(int n, Statistics statistics, double scale = 0.5,
                               double displacement_scale = 0.0);

    /// Mixed quasifree data: a rotated thermal seed with occupations bounded
    /// away from purity.
    GaussianData mixed_gaussian(int n, Statistics statistics, double scale = 0.5,
                                double min_fill = 0.15, double max_fill = 0.6);

    /// Random full-rank density matrix on the space; for bosons the support is
    /// compressed below max_occupation.
    Matrix density_matrix(const ModeSpace& space, int max_occupation);

    QuasifreeParams quasifree_params(int n, Statistics statistics, double scale,
                                     bool mixed, bool displaced);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

}  // namespace qflab
