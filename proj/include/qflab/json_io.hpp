#pragma once

#include "qflab/bhf.hpp"
#include "qflab/bogoliubov.hpp"
#include "qflab/fock.hpp"
#include "qflab/gaussian.hpp"
#include "qflab/types.hpp"

#include <json.hpp>

#include <string>

namespace qflab {

// Reports and inputs use insertion-ordered JSON so outputs diff cleanly.
using Json = nlohmann::ordered_json;

/// {"rows": R, "cols": C, "re": [...], "im": [...]} row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"re": [...], "im": [...]}.
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// {"n_modes": n, "statistics": "boson"|"fermion", "cutoff": c}.
Json space_to_json(const ModeSpace& space);
ModeSpace space_from_json(const Json& j);

Statistics statistics_from_string(const std::string& s);

/// {"gamma": mat, "alpha": mat, "b": vec, "statistics": str}.
Json gaussian_to_json(const GaussianData& g);
GaussianData gaussian_from_json(const Json& j);

/// {"u": mat, "v": mat, "statistics": str}.
Json bogoliubov_to_json(const BogoliubovMap& m);
BogoliubovMap bogoliubov_from_json(const Json& j);

/// {"h": mat, "V": mat?, "extra_pairing": mat?, "drive": vec?, "species": str}.
Json model_to_json(const TwoBodyHamiltonian& h);
TwoBodyHamiltonian model_from_json(const Json& j);

Json params_to_json(const QuasifreeParams& p);
QuasifreeParams params_from_json(const Json& j);

/// A state description for the CLI: one of
///   {"type": "gaussian", ...GaussianData fields...}
///   {"type": "density", "matrix": mat}
///   {"type": "quasifree", "params": {...}}
struct StateSpec {
    enum class Kind { Gaussian, Density, Quasifree } kind = Kind::Gaussian;
    GaussianData gaussian;
    Matrix density;
    QuasifreeParams params;
};

StateSpec state_from_json(const Json& j);

/// Realizes the state as a density matrix on the space (for gaussian specs
/// this requires pure data or a thermal-diagonalizable route and is rejected;
/// density and quasifree specs are supported).
Matrix state_to_density(const StateSpec& spec, const ModeSpace& space,
                        const Tolerances& tol = {});

/// Two-point data of the state (all spec kinds).
GaussianData state_to_gaussian(const StateSpec& spec, const ModeSpace* space,
                               const Tolerances& tol = {});

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// FNV-1a 64-bit digest of a file's bytes, hex encoded.
std::string file_digest(const std::string& path);

}  // namespace qflab
