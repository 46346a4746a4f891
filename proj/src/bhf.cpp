#include "qflab/bhf.hpp"

#include "qflab/linalg.hpp"
#include "qflab/wick.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace qflab {

void TwoBodyHamiltonian::validate(const Tolerances& tol) const {
    const int n = n_modes();
    if (h.cols() != n) throw InvalidInput("TwoBodyHamiltonian: h must be square");
    const double hscale = std::max(1.0, spectral_norm(h));
    if (hermiticity_defect(h) > tol.equality * hscale)
        throw InvalidInput("TwoBodyHamiltonian: h is not Hermitian");
    if (v.size() > 0) {
        if (v.rows() != n * n || v.cols() != n * n)
            throw InvalidInput("TwoBodyHamiltonian: V must be n^2 x n^2");
        const double vscale = std::max(1.0, spectral_norm(v));
        if (hermiticity_defect(v) > tol.equality * vscale)
            throw InvalidInput("TwoBodyHamiltonian: V is not Hermitian");
    }
    if (pairing.size() > 0 && (pairing.rows() != n || pairing.cols() != n))
        throw InvalidInput("TwoBodyHamiltonian: pairing block must be n x n");
    if (drive.size() > 0 && drive.size() != n)
        throw InvalidInput("TwoBodyHamiltonian: drive must have length n");
    if (statistics == Statistics::Fermion && (pairing.size() > 0 || drive.size() > 0)) {
        if (drive.size() > 0)
            throw InvalidInput("TwoBodyHamiltonian: fermion models are even, no drive");
    }
}

Matrix TwoBodyHamiltonian::to_fock(const ModeSpace& space) const {
    validate();
    const int n = n_modes();
    if (space.n_modes() != n || space.statistics() != statistics)
        throw InvalidInput("TwoBodyHamiltonian::to_fock: space mismatch");
    const Eigen::Index d = space.dim();
    Matrix out = Matrix::Zero(d, d);
    for (int i = 1; i <= n; ++i) {
        Matrix row = Matrix::Zero(d, d);
        for (int j = 1; j <= n; ++j) row += h(i - 1, j - 1) * space.annihilator(j);
        out += space.creator(i) * row;
    }
    if (v.size() > 0) {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                Matrix right = Matrix::Zero(d, d);
                for (int k = 1; k <= n; ++k)
                    for (int l = 1; l <= n; ++l)
                        right += v((i - 1) * n + (j - 1), (k - 1) * n + (l - 1)) *
                                 (space.annihilator(k) * space.annihilator(l));
                out += 0.5 * space.creator(j) * (space.creator(i) * right);
            }
    }
    if (pairing.size() > 0) {
        Matrix p = Matrix::Zero(d, d);
        for (int i = 1; i <= n; ++i) {
            Matrix row = Matrix::Zero(d, d);
            for (int j = 1; j <= n; ++j) row += pairing(i - 1, j - 1) * space.creator(j);
            p += space.creator(i) * row;
        }
        out += 0.5 * (p + p.adjoint());
    }
    if (drive.size() > 0) {
        const Matrix dr = space.creator(drive);
        out += dr + dr.adjoint();
    }
    return out;
}

double energy_functional(const Matrix& gamma, const Matrix& gamma2,
                         const TwoBodyHamiltonian& ham) {
    Complex e = (ham.h * gamma).trace();
    if (ham.v.size() > 0) e += 0.5 * (ham.v * gamma2).trace();
    if (std::abs(e.imag()) > 1e-10 * std::max(1.0, std::abs(e.real())))
        throw InvalidInput("energy_functional: energy has a large imaginary part");
    return e.real();
}

double quasifree_energy(const TwoBodyHamiltonian& ham, const GaussianData& g) {
    const int n = ham.n_modes();
    if (g.n_modes() != n || g.statistics != ham.statistics)
        throw InvalidInput("quasifree_energy: data/Hamiltonian mismatch");
    double e = std::real((ham.h * g.gamma).trace());
    if (ham.v.size() > 0) {
        const ContractionTable table(g);
        // 1/2 sum V[(i,j),(k,l)] <a*_j a*_i a_k a_l> by the contraction expansion
        std::vector<LadderFactor> mono(4);
        Complex quartic(0.0, 0.0);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    for (int l = 1; l <= n; ++l) {
                        const Complex coeff =
                            ham.v((i - 1) * n + (j - 1), (k - 1) * n + (l - 1));
                        if (coeff == Complex(0.0, 0.0)) continue;
                        mono[0] = {j, true};
                        mono[1] = {i, true};
                        mono[2] = {k, false};
                        mono[3] = {l, false};
                        quartic += coeff * quasifree_expectation(g, mono);
                    }
        e += 0.5 * quartic.real();
    }
    if (ham.pairing.size() > 0)
        e += std::real((ham.pairing.array() * g.alpha.array().conjugate()).sum());
    if (ham.drive.size() > 0) e += 2.0 * std::real(ham.drive.dot(g.b));
    return e;
}

bool QuasifreeParams::pure() const {
    return mixing.size() == 0 || mixing.cwiseAbs().maxCoeff() < 1e-14;
}

QuasifreeParams QuasifreeParams::zero(int n, Statistics statistics) {
    QuasifreeParams p;
    p.statistics = statistics;
    p.gen_a = Matrix::Zero(n, n);
    p.gen_b = Matrix::Zero(n, n);
    p.displacement = statistics == Statistics::Boson ? Vector::Zero(n) : Vector();
    p.mixing = RealVector::Zero(n);
    return p;
}

namespace {

// Occupation of the seed state before the Bogoliubov rotation.
RealVector seed_occupations(const QuasifreeParams& p) {
    const int n = p.n_modes();
    RealVector occ = RealVector::Zero(n);
    for (int k = 0; k < n; ++k) {
        const double m = p.mixing.size() > 0 ? p.mixing(k) : 0.0;
        occ(k) = p.statistics == Statistics::Boson ? m / (1.0 - m) : m / (1.0 + m);
    }
    for (int mode : p.occupied_modes) {
        if (p.statistics != Statistics::Fermion)
            throw InvalidInput("QuasifreeParams: occupied modes are fermionic");
        if (mode < 1 || mode > n) throw InvalidInput("QuasifreeParams: bad occupied mode");
        occ(mode - 1) = 1.0;
    }
    return occ;
}

}  // namespace

GaussianData data_from_params(const QuasifreeParams& p) {
    const int n = p.n_modes();
    const BogoliubovMap u = exp_generator(p.gen_a, p.gen_b, p.statistics);
    const RealVector occ = seed_occupations(p);
    GaussianData seed;
    seed.statistics = p.statistics;
    seed.gamma = occ.cast<Complex>().asDiagonal();
    seed.alpha = Matrix::Zero(n, n);
    seed.b = Vector::Zero(n);
    const Matrix ub = u.block();
    const Matrix gt = ub * gen1pdm(seed) * ub.adjoint();
    GaussianData out;
    out.statistics = p.statistics;
    out.gamma = gt.topLeftCorner(n, n);
    out.alpha = gt.topRightCorner(n, n);
    out.b = Vector::Zero(n);
    if (p.statistics == Statistics::Boson && p.displacement.size() == n) {
        out.b = p.displacement;
        out.gamma += out.b * out.b.adjoint();
        out.alpha += out.b * out.b.transpose();
    }
    out.gamma = (out.gamma + out.gamma.adjoint()) / 2.0;
    out.alpha = p.statistics == Statistics::Boson
                    ? ((out.alpha + out.alpha.transpose()) / 2.0).eval()
                    : ((out.alpha - out.alpha.transpose()) / 2.0).eval();
    return out;
}

Matrix realize_state(const QuasifreeParams& p, const ModeSpace& space,
                     const Tolerances& tol) {
    const int n = p.n_modes();
    if (space.n_modes() != n || space.statistics() != p.statistics)
        throw InvalidInput("realize_state: space mismatch");
    const RealVector occ_means = seed_occupations(p);

    // diagonal seed: Slater occupation (x) thermal weights
    Vector weights = Vector::Zero(space.dim());
    double norm = 0.0;
    for (Eigen::Index idx = 0; idx < space.dim(); ++idx) {
        const auto& occ = space.occupation(idx);
        double w = 1.0;
        for (int k = 0; k < n; ++k) {
            const bool slater =
                std::find(p.occupied_modes.begin(), p.occupied_modes.end(), k + 1) !=
                p.occupied_modes.end();
            if (slater) {
                if (occ[static_cast<std::size_t>(k)] != 1) { w = 0.0; break; }
            } else if (p.statistics == Statistics::Fermion) {
                const double b = p.mixing.size() > 0 ? p.mixing(k) : 0.0;
                w *= occ[static_cast<std::size_t>(k)] == 1 ? b : 1.0;
            } else {
                const double c = p.mixing.size() > 0 ? p.mixing(k) : 0.0;
                const int o = occ[static_cast<std::size_t>(k)];
                if (o > 0 && c == 0.0) { w = 0.0; break; }
                w *= std::pow(c, o);
            }
        }
        weights(idx) = w;
        norm += w;
    }
    if (norm <= 0.0) throw InvalidInput("realize_state: empty seed state");
    Matrix rho = (weights / norm).asDiagonal();

    BogoliubovMap u = exp_generator(p.gen_a, p.gen_b, p.statistics);
    if (p.statistics == Statistics::Boson) u.v = -u.v;
    const Matrix uu = implement_unitary(u, space, tol);
    rho = uu * rho * uu.adjoint();

    if (p.statistics == Statistics::Boson && p.displacement.size() == n &&
        p.displacement.norm() > 0.0) {
        const Matrix w = weyl_transformation(p.displacement, space, tol);
        rho = w.adjoint() * rho * w;
    }
    rho = (rho + rho.adjoint()) / 2.0;
    rho /= rho.trace().real();

    if (space.statistics() == Statistics::Boson) {
        const double leak = space.occupation_mass_above(rho, space.cutoff() - 2);
        if (leak > 1e-10)
            throw CutoffUnsafe("realize_state: occupation mass " + std::to_string(leak) +
                               " above cutoff - 2");
    }
    return rho;
}

namespace {

// ---- parameter packing for the simplex optimizer ----

struct Packing {
    Statistics statistics;
    int n = 0;
    bool mixed = false;
    int n_slater = 0;  // fermion seed occupation: modes 1..n_slater

    int a_count() const { return n * n; }
    int b_count() const {
        return statistics == Statistics::Boson ? n * (n + 1) : n * (n - 1);
    }
    int f_count() const { return statistics == Statistics::Boson ? 2 * n : 0; }
    int m_count() const { return mixed ? n : 0; }
    int total() const { return a_count() + b_count() + f_count() + m_count(); }

    QuasifreeParams unpack(const RealVector& x) const {
        QuasifreeParams p = QuasifreeParams::zero(n, statistics);
        int at = 0;
        for (int i = 0; i < n; ++i) {
            p.gen_a(i, i) = x(at++);
            for (int j = i + 1; j < n; ++j) {
                p.gen_a(i, j) = Complex(x(at), x(at + 1));
                p.gen_a(j, i) = std::conj(p.gen_a(i, j));
                at += 2;
            }
        }
        if (statistics == Statistics::Boson) {
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    p.gen_b(i, j) = Complex(x(at), x(at + 1));
                    p.gen_b(j, i) = p.gen_b(i, j);
                    at += 2;
                }
        } else {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    p.gen_b(i, j) = Complex(x(at), x(at + 1));
                    p.gen_b(j, i) = -p.gen_b(i, j);
                    at += 2;
                }
        }
        for (int i = 0; i < f_count() / 2; ++i) {
            p.displacement(i) = Complex(x(at), x(at + 1));
            at += 2;
        }
        if (mixed) {
            for (int i = 0; i < n; ++i) {
                const double t = std::clamp(x(at++), -30.0, 30.0);
                // logistic for bosons (c < 1), softplus for fermions (b >= 0)
                p.mixing(i) = statistics == Statistics::Boson
                                  ? 1.0 / (1.0 + std::exp(-t))
                                  : std::log1p(std::exp(t));
            }
        }
        for (int k = 1; k <= n_slater; ++k) p.occupied_modes.push_back(k);
        return p;
    }
};

struct SimplexResult {
    RealVector x;
    double f = 0.0;
    int evaluations = 0;
    bool converged = false;
    std::vector<double> best_log;
};

SimplexResult nelder_mead(const std::function<double(const RealVector&)>& objective,
                          const RealVector& x0, double step, int max_iter, double f_tol) {
    const int n = static_cast<int>(x0.size());
    SimplexResult result;
    if (n == 0) {
        result.x = x0;
        result.f = objective(x0);
        result.evaluations = 1;
        result.converged = true;
        result.best_log.push_back(result.f);
        return result;
    }
    std::vector<RealVector> pts(static_cast<std::size_t>(n) + 1, x0);
    std::vector<double> vals(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) pts[static_cast<std::size_t>(i)](i - 1) += step;
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = objective(pts[i]);
    result.evaluations = n + 1;

    std::vector<std::size_t> order(pts.size());
    for (int iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[order.size() - 2];
        result.best_log.push_back(vals[best]);
        if (std::abs(vals[worst] - vals[best]) <= f_tol * (1.0 + std::abs(vals[best]))) {
            result.converged = true;
            break;
        }

        RealVector centroid = RealVector::Zero(n);
        for (std::size_t i : order)
            if (i != worst) centroid += pts[i];
        centroid /= static_cast<double>(n);

        const RealVector reflected = centroid + (centroid - pts[worst]);
        const double f_reflected = objective(reflected);
        ++result.evaluations;
        if (f_reflected < vals[best]) {
            const RealVector expanded = centroid + 2.0 * (centroid - pts[worst]);
            const double f_expanded = objective(expanded);
            ++result.evaluations;
            if (f_expanded < f_reflected) {
                pts[worst] = expanded;
                vals[worst] = f_expanded;
            } else {
                pts[worst] = reflected;
                vals[worst] = f_reflected;
            }
        } else if (f_reflected < vals[second_worst]) {
            pts[worst] = reflected;
            vals[worst] = f_reflected;
        } else {
            const RealVector contracted = centroid + 0.5 * (pts[worst] - centroid);
            const double f_contracted = objective(contracted);
            ++result.evaluations;
            if (f_contracted < vals[worst]) {
                pts[worst] = contracted;
                vals[worst] = f_contracted;
            } else {
                for (std::size_t i : order) {
                    if (i == best) continue;
                    pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
                    vals[i] = objective(pts[i]);
                    ++result.evaluations;
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] < vals[best]) best = i;
    result.x = pts[best];
    result.f = vals[best];
    return result;
}

void run_boundedness_probe(const TwoBodyHamiltonian& h, int probe_cutoff) {
    if (h.statistics != Statistics::Boson) return;
    const ModeSpace coarse = ModeSpace::build(h.n_modes(), Statistics::Boson, probe_cutoff);
    const ModeSpace fine = ModeSpace::build(h.n_modes(), Statistics::Boson, probe_cutoff + 4);
    const double e_coarse = min_eigenvalue(h.to_fock(coarse));
    const double e_fine = min_eigenvalue(h.to_fock(fine));
    if (std::abs(e_coarse - e_fine) > 1e-3 * std::max(1.0, std::abs(e_coarse)))
        throw BoundednessProbeFailed(
            "ground energies at truncations " + std::to_string(probe_cutoff) + " and " +
            std::to_string(probe_cutoff + 4) + " differ by " +
            std::to_string(std::abs(e_coarse - e_fine)));
}

}  // namespace

MinimizeResult minimize(const TwoBodyHamiltonian& h, const MinimizeOptions& opts) {
    h.validate();
    if (!opts.skip_probe) run_boundedness_probe(h, opts.boson_probe_cutoff);
    const int n = h.n_modes();

    MinimizeResult result;
    result.energy = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal;

    for (int restart = 0; restart < opts.restarts; ++restart) {
        Packing packing;
        packing.statistics = h.statistics;
        packing.n = n;
        packing.mixed = opts.mixed;
        packing.n_slater = 0;
        if (h.statistics == Statistics::Fermion) {
            // sweep the seed occupation so both parity sectors are reached
            packing.n_slater = restart <= n ? restart % (n + 1)
                                            : static_cast<int>(rng() % (n + 1));
        }
        RealVector x0(packing.total());
        const double scale = restart == 0 ? 0.0 : opts.initial_scale;
        for (int i = 0; i < x0.size(); ++i) x0(i) = scale * normal(rng);
        if (opts.mixed)
            for (int i = 0; i < packing.m_count(); ++i)
                x0(packing.total() - 1 - i) = -2.0 + scale * normal(rng);

        auto objective = [&](const RealVector& x) {
            return quasifree_energy(h, data_from_params(packing.unpack(x)));
        };
        SimplexResult run = nelder_mead(objective, x0, 0.25, opts.max_iterations, opts.f_tol);
        result.evaluations += run.evaluations;
        RestartTrace trace;
        trace.restart = restart;
        trace.best_energy = std::move(run.best_log);
        result.trace.push_back(std::move(trace));
        if (run.f < result.energy) {
            result.energy = run.f;
            result.params = packing.unpack(run.x);
            result.converged = run.converged;
        }
    }
    return result;
}

GapReport verify_pure_equals_mixed(const TwoBodyHamiltonian& h,
                                   const MinimizeOptions& opts, int n_mixed_samples,
                                   double tol, double tol_opt) {
    MinimizeOptions pure_opts = opts;
    pure_opts.mixed = false;
    MinimizeOptions mixed_opts = opts;
    mixed_opts.mixed = true;
    mixed_opts.seed = opts.seed + 1;

    const MinimizeResult pure = minimize(h, pure_opts);
    const MinimizeResult mixed = minimize(h, mixed_opts);

    GapReport report;
    report.e_pure = pure.energy;
    report.e_mixed = mixed.energy;
    report.pure_params = pure.params;
    report.gap = std::abs(pure.energy - mixed.energy);
    report.gap_ok = report.gap <= tol_opt;

    // sampled mixed quasifree states may never undercut the pure optimum
    std::mt19937_64 rng(opts.seed + 2);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const int n = h.n_modes();
    report.min_sampled = std::numeric_limits<double>::infinity();
    for (int s = 0; s < n_mixed_samples; ++s) {
        QuasifreeParams p = QuasifreeParams::zero(n, h.statistics);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                p.gen_a(i, j) = Complex(normal(rng), normal(rng)) * 0.4;
                p.gen_b(i, j) = Complex(normal(rng), normal(rng)) * 0.4;
            }
        p.gen_a = ((p.gen_a + p.gen_a.adjoint()) / 2.0).eval();
        p.gen_b = h.statistics == Statistics::Boson
                      ? ((p.gen_b + p.gen_b.transpose()) / 2.0).eval()
                      : ((p.gen_b - p.gen_b.transpose()) / 2.0).eval();
        if (h.statistics == Statistics::Boson)
            for (int i = 0; i < n; ++i)
                p.displacement(i) = Complex(normal(rng), normal(rng)) * 0.5;
        if (h.statistics == Statistics::Fermion && uniform(rng) < 0.5)
            p.occupied_modes.push_back(1 + static_cast<int>(rng() % n));
        for (int i = 0; i < n; ++i) {
            const bool occupied =
                std::find(p.occupied_modes.begin(), p.occupied_modes.end(), i + 1) !=
                p.occupied_modes.end();
            p.mixing(i) = occupied ? 0.0 : 0.6 * uniform(rng);
        }
        const double e = quasifree_energy(h, data_from_params(p));
        report.min_sampled = std::min(report.min_sampled, e);
        if (e < report.e_pure - tol) report.sampled_ok = false;
    }
    return report;
}

std::vector<std::pair<double, QuasifreeParams>> convex_decompose(
    const QuasifreeParams& p, int k_max) {
    if (p.statistics != Statistics::Fermion)
        throw InvalidInput("convex_decompose: fermion parameters required");
    const int n = p.n_modes();
    std::vector<int> thermal_modes;
    for (int k = 1; k <= n; ++k) {
        const bool occupied =
            std::find(p.occupied_modes.begin(), p.occupied_modes.end(), k) !=
            p.occupied_modes.end();
        if (!occupied && p.mixing.size() > 0 && p.mixing(k - 1) > 0.0)
            thermal_modes.push_back(k);
    }
    double z = 1.0;
    for (int k : thermal_modes) z *= 1.0 + p.mixing(k - 1);

    std::vector<std::pair<double, QuasifreeParams>> parts;
    const std::size_t m = thermal_modes.size();
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
        if (std::popcount(mask) > k_max) continue;
        double weight = 1.0 / z;
        QuasifreeParams part = p;
        part.mixing = RealVector::Zero(n);
        for (std::size_t i = 0; i < m; ++i)
            if ((mask >> i) & 1ULL) {
                weight *= p.mixing(thermal_modes[i] - 1);
                part.occupied_modes.push_back(thermal_modes[i]);
            }
        std::sort(part.occupied_modes.begin(), part.occupied_modes.end());
        parts.emplace_back(weight, std::move(part));
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    return parts;
}

double exact_ground_energy(const TwoBodyHamiltonian& h, const ModeSpace& space) {
    return min_eigenvalue(h.to_fock(space));
}

}  // namespace qflab
