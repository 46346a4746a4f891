#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qflab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Statistics { Boson, Fermion };

inline const char* to_string(Statistics s) {
    return s == Statistics::Boson ? "boson" : "fermion";
}

/// Base class of all errors thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent input (bad JSON, bad dimensions, bad parameters).
struct InvalidInput : Error {
    using Error::Error;
};

struct DimensionOverflow : Error {
    using Error::Error;
};

struct NotADensityMatrix : Error {
    using Error::Error;
};

/// A truncated-space computation would be corrupted by probability mass near
/// the occupation cutoff.
struct CutoffUnsafe : Error {
    using Error::Error;
};

struct InvalidBogoliubov : Error {
    using Error::Error;
};

/// The principal matrix logarithm of a Bogoliubov map does not yield a valid
/// quadratic generator (the map is not reachable by a single exponential).
struct BranchAmbiguity : Error {
    using Error::Error;
};

struct NotAntisymmetric : Error {
    using Error::Error;
};

struct NotPure : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " at position " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};

/// Default numeric tolerances used across the library.
struct Tolerances {
    double equality = 1e-8;       // relative, generic equality checks
    double psd_floor = 1e-9;      // scaled by spectral radius in PSD checks
    double purity = 1e-7;         // absolute, purity residuals
    double bogoliubov = 1e-10;    // Bogoliubov defining-relation residuals
    double cutoff_mass = 1e-12;   // occupation mass allowed above a safe cutoff
};

}  // namespace qflab
