#pragma once

#include "qflab/bogoliubov.hpp"
#include "qflab/fock.hpp"
#include "qflab/gaussian.hpp"
#include "qflab/types.hpp"

#include <cstdint>
#include <vector>

namespace qflab {

/// h-quadratic plus V-quartic Hamiltonian, with optional pairing and drive
/// terms for non-particle-conserving boson models:
///   H = sum h_ij a*_i a_j
///     + 1/2 sum V[(i,j),(k,l)] a*_j a*_i a_k a_l
///     + 1/2 sum (pairing_ij a*_i a*_j + h.c.)
///     + sum (drive_i a*_i + h.c.)
struct TwoBodyHamiltonian {
    Matrix h;
    Matrix v;        // n^2 x n^2; size 0 disables the quartic term
    Matrix pairing;  // n x n; size 0 disables
    Vector drive;    // length n; size 0 disables
    Statistics statistics = Statistics::Fermion;

    int n_modes() const { return static_cast<int>(h.rows()); }
    void validate(const Tolerances& tol = {}) const;

    /// Dense matrix on the truncated Fock space.
    Matrix to_fock(const ModeSpace& space) const;
};

/// E(gamma, Gamma) = tr(h gamma) + 1/2 tr(V Gamma).
double energy_functional(const Matrix& gamma, const Matrix& gamma2,
                         const TwoBodyHamiltonian& h);

/// Energy of the quasifree state with the given two-point data, evaluated
/// through the contraction expansion (no Fock-space matrices involved).
double quasifree_energy(const TwoBodyHamiltonian& h, const GaussianData& g);

/// Parameters of a quasifree state: a Bogoliubov generator pair, a
/// displacement (bosons), a mixing spectrum for the thermal factor, and the
/// occupied Slater modes (fermions).
struct QuasifreeParams {
    Statistics statistics = Statistics::Fermion;
    Matrix gen_a;                     // Hermitian generator part
    Matrix gen_b;                     // pairing generator part
    Vector displacement;              // bosons; size 0 = none
    RealVector mixing;                // c_k in [0,1) bosons / b_k >= 0 fermions
    std::vector<int> occupied_modes;  // fermion Slater modes (1-based)

    int n_modes() const { return static_cast<int>(gen_a.rows()); }
    int slater_dim() const { return static_cast<int>(occupied_modes.size()); }
    bool pure() const;

    static QuasifreeParams zero(int n, Statistics statistics);
};

/// Two-point data of the parameterized state: the Bogoliubov rotation of the
/// Slater/thermal seed, displaced by the first moment.
GaussianData data_from_params(const QuasifreeParams& p);

/// The density matrix on the truncated Fock space: a Weyl-displaced,
/// Bogoliubov-rotated Slater (x) thermal seed. Pure parameters give a rank-1
/// projector. Throws CutoffUnsafe when occupation leaks above cutoff - 2.
Matrix realize_state(const QuasifreeParams& p, const ModeSpace& space,
                     const Tolerances& tol = {});

struct MinimizeOptions {
    int restarts = 20;
    std::uint64_t seed = 1;
    int max_iterations = 4000;
    double f_tol = 1e-12;
    double initial_scale = 0.5;
    bool mixed = false;            // optimize the mixing spectrum as well
    int boson_probe_cutoff = 10;   // boundedness probe truncation (bosons)
    bool skip_probe = false;
};

struct RestartTrace {
    int restart = 0;
    std::vector<double> best_energy;  // best value after each iteration
};

struct MinimizeResult {
    double energy = 0.0;
    QuasifreeParams params;
    std::vector<RestartTrace> trace;
    bool converged = false;
    int evaluations = 0;
};

struct BoundednessProbeFailed : Error {
    using Error::Error;
};

/// Derivative-free multi-start simplex minimization of the quasifree energy.
/// Boson Hamiltonians must pass a boundedness probe (ground energies at two
/// truncations differing by 4 agree within 1e-3) unless skip_probe is set.
MinimizeResult minimize(const TwoBodyHamiltonian& h, const MinimizeOptions& opts);

struct GapReport {
    double e_pure = 0.0;
    double e_mixed = 0.0;
    double gap = 0.0;
    bool sampled_ok = true;     // every sampled mixed energy >= e_pure - tol
    double min_sampled = 0.0;
    bool gap_ok = false;        // |e_pure - e_mixed| <= tol_opt
    QuasifreeParams pure_params;
};

/// Checks that the variation over pure quasifree states reaches the full
/// quasifree infimum: optimizes both families and samples random mixed
/// states; failures are reported, not thrown.
GapReport verify_pure_equals_mixed(const TwoBodyHamiltonian& h,
                                   const MinimizeOptions& opts, int n_mixed_samples,
                                   double tol = 1e-6, double tol_opt = 1e-4);

/// Convex decomposition of a mixed fermion quasifree state into pure ones up
/// to thermal-excitation order k_max: weights are the thermal subset
/// probabilities, components are Slater seeds extended by the subset.
std::vector<std::pair<double, QuasifreeParams>> convex_decompose(
    const QuasifreeParams& p, int k_max);

/// Ground energy of the truncated Fock matrix (dense diagonalization oracle).
double exact_ground_energy(const TwoBodyHamiltonian& h, const ModeSpace& space);

}  // namespace qflab
