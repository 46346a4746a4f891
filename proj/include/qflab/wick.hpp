#pragma once

#include "qflab/fock.hpp"
#include "qflab/gaussian.hpp"
#include "qflab/types.hpp"

#include <string>
#include <vector>

namespace qflab {

/// One ladder operator in a monomial. Modes are 1-based; `letter` keeps the
/// spelling ('a' or 'c') so parsed text round-trips through the printer.
struct LadderFactor {
    int mode = 1;
    bool create = false;
    char letter = 'a';
};

struct LadderTerm {
    Complex coefficient{1.0, 0.0};
    std::vector<LadderFactor> factors;  // operator order is significant
};

struct LadderPolynomial {
    std::vector<LadderTerm> terms;

    int degree() const;
    int max_mode() const;
};

/// Grammar: terms separated by +/-; factors `a*(k)`, `a(k)`, `c*(k)`, `c(k)`
/// with 1-based integer mode k; optional leading coefficient per term, either
/// a real literal or a complex `(re,im)`; whitespace-insensitive.
LadderPolynomial parse(const std::string& text);

/// Canonical printer; parse(to_string(p)) round-trips.
std::string to_string(const LadderPolynomial& poly);

/// Two-point and one-point expectation values of a quasifree state, derived
/// from the generalized 1-pdm entries:
///   <a*_i a_j> = gamma_ji, <a_i a*_j> = delta_ij +/- gamma_ij,
///   <a*_i a*_j> = conj(alpha_ij), <a_i a_j> = alpha_ji,
///   <a_i> = b_i, <a*_i> = conj(b_i).
struct ContractionTable {
    explicit ContractionTable(const GaussianData& g);

    /// Pair value in the given operator order.
    Complex pair(const LadderFactor& first, const LadderFactor& second) const;
    /// First moment of a single factor.
    Complex singleton(const LadderFactor& f) const;

    Statistics statistics;
    Matrix gamma;   // centered for bosons
    Matrix alpha;   // centered for bosons
    Vector b;
};

/// Quasifree expectation of one monomial: the Pfaffian of the pairwise
/// contraction matrix for fermions (odd monomials vanish), the sum over all
/// pairings and singletons for bosons (pairs from the recentered data,
/// singletons from the first moment).
Complex fermion_quasifree_expectation(const GaussianData& g,
                                      const std::vector<LadderFactor>& monomial);
Complex boson_quasifree_expectation(const GaussianData& g,
                                    const std::vector<LadderFactor>& monomial);

/// Monomial dispatch on species.
Complex quasifree_expectation(const GaussianData& g,
                              const std::vector<LadderFactor>& monomial);

/// Linear extension to polynomials.
Complex quasifree_expectation(const GaussianData& g, const LadderPolynomial& poly);

/// Quasifree 2-pdm built entirely from (gamma, alpha, b) through the
/// contraction expansion: Gamma[(i,j),(k,l)] = <a*_l a*_k a_i a_j>.
Matrix two_pdm_from_gaussian(const GaussianData& g);

/// Brute-force oracle: assembles the operator product from ladder matrices
/// and traces against rho. For bosons the state must carry negligible mass
/// above cutoff - degree, otherwise CutoffUnsafe.
Complex oracle_expectation(const ModeSpace& space, const Matrix& rho,
                           const LadderPolynomial& poly, const Tolerances& tol = {});

}  // namespace qflab
