#pragma once

#include "qflab/fock.hpp"
#include "qflab/gaussian.hpp"
#include "qflab/types.hpp"

namespace qflab {

/// Linear map [[u, v], [conj(v), conj(u)]] on h (+) h.
///
/// Boson defining relations:  u u* - v v* = 1,  u* u - v^T conj(v) = 1,
///                            u* v - v^T conj(u) = 0,  u v^T - v u^T = 0.
/// Fermion relations are the same with "+" in place of "-", equivalent to
/// unitarity of the block matrix.
struct BogoliubovMap {
    Matrix u;
    Matrix v;
    Statistics statistics = Statistics::Boson;

    int n_modes() const { return static_cast<int>(u.rows()); }

    /// The 2n x 2n block matrix.
    Matrix block() const;

    static BogoliubovMap identity(int n_modes, Statistics statistics);

    /// From the block matrix of the correct structure.
    static BogoliubovMap from_block(const Matrix& block, Statistics statistics,
                                    double tol = 1e-10);
};

struct RelationReport {
    double r_uu = 0.0;        // ||u u* -/+ v v* - 1||
    double r_uTu = 0.0;       // ||u* u -/+ v^T conj(v) - 1||
    double r_uv = 0.0;        // ||u* v -/+ v^T conj(u)||
    double r_uvT = 0.0;       // ||u v^T -/+ v u^T||
    double r_aggregate = 0.0; // ||U* S U - S|| (bosons) or ||U* U - 1|| (fermions)
    double max() const;
};

RelationReport verify_relations(const BogoliubovMap& u);
bool is_valid(const BogoliubovMap& u, double tol = 1e-10);
void require_valid(const BogoliubovMap& u, double tol = 1e-10);

/// Inverse map: S U* S for bosons, U* for fermions.
BogoliubovMap inverse(const BogoliubovMap& u);

/// Composition a * b as maps on h (+) h.
BogoliubovMap compose(const BogoliubovMap& a, const BogoliubovMap& b);

/// Bogoliubov map exp([[i a, b], [conj(b), conj(i a)]]) from a Hermitian
/// generator a and a pairing generator b (symmetric for bosons, antisymmetric
/// for fermions).
BogoliubovMap exp_generator(const Matrix& a_hermitian, const Matrix& b_pairing,
                            Statistics statistics);

/// Unitary implementation of U on the truncated Fock space: the operator
/// exp(X) of the quadratic generator X recovered from the principal matrix
/// logarithm of the block map, satisfying
///   UU [a*(f) + a(conj(g))] UU* = a*(u f + v g) + a(v conj(f) + u conj(g))
/// on the cutoff-safe subspace. The global phase is fixed by making
/// <vacuum, UU vacuum> real and nonnegative when it is nonzero.
///
/// Throws InvalidBogoliubov when the relations fail, BranchAmbiguity when no
/// structured logarithm exists (e.g. fermion maps not reachable by a single
/// exponential), and CutoffUnsafe when the transformed boson vacuum leaks
/// above cutoff - 2.
Matrix implement_unitary(const BogoliubovMap& u, const ModeSpace& space,
                         const Tolerances& tol = {});

/// Weyl operator W(f) = exp(i Phi(f)), Phi(f) = (a*(f) + a(f)) / sqrt(2).
/// Throws CutoffUnsafe when the displaced vacuum leaks above cutoff - 2.
Matrix weyl_operator(const Vector& f, const ModeSpace& space,
                     const Tolerances& tol = {});

/// Weyl transformation W_g = W(i sqrt(2) g), shifting a*(f) by <g, f>.
Matrix weyl_transformation(const Vector& g, const ModeSpace& space,
                           const Tolerances& tol = {});

/// Second quantization Gamma(C): acts as C tensor ... tensor C on each
/// N-particle sector. Bosons require ||C|| < 1.
Matrix second_quantize(const Matrix& c, const ModeSpace& space);

/// tr Gamma(C) on the truncated space.
Complex second_quantize_trace(const Matrix& c, const ModeSpace& space);

/// A Bogoliubov map carrying pure Gaussian data onto the vacuum:
/// bosons  u = (1 + gamma)^{1/2},  v = alpha (1 + conj(gamma))^{-1/2};
/// fermions u = (1 - gamma)^{1/2},  v = alpha (1 - conj(gamma))^{-1/2} on the
/// complement of the occupied eigenspace plus a pairing unit on it.
/// The result satisfies U diag(0, 1) U* = gen1pdm(g).
/// Throws NotPure when the purity residual exceeds tol.
BogoliubovMap bogoliubov_from_gaussian(const GaussianData& g, double tol = 1e-7);

}  // namespace qflab
