#include "qflab/json_io.hpp"

#include <fstream>
#include <sstream>

namespace qflab {

Json matrix_to_json(const Matrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(m.size()));
    im.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            re.push_back(m(i, k).real());
            im.push_back(m(i, k).imag());
        }
    j["re"] = re;
    j["im"] = im;
    return j;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("re") || !j.contains("im"))
        throw InvalidInput("matrix JSON requires rows, cols, re, im");
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(re.size()) != rows * cols || re.size() != im.size())
        throw InvalidInput("matrix JSON has inconsistent entry counts");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k) {
            const std::size_t at = static_cast<std::size_t>(i * cols + k);
            m(i, k) = Complex(re[at], im[at]);
        }
    return m;
}

Json vector_to_json(const Vector& v) {
    Json j;
    std::vector<double> re, im;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v(i).real());
        im.push_back(v(i).imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

Vector vector_from_json(const Json& j) {
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size()) throw InvalidInput("vector JSON has inconsistent lengths");
    Vector v(static_cast<Eigen::Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
    return v;
}

Statistics statistics_from_string(const std::string& s) {
    if (s == "boson" || s == "Boson") return Statistics::Boson;
    if (s == "fermion" || s == "Fermion") return Statistics::Fermion;
    throw InvalidInput("unknown statistics '" + s + "'");
}

Json space_to_json(const ModeSpace& space) {
    Json j;
    j["n_modes"] = space.n_modes();
    j["statistics"] = to_string(space.statistics());
    j["cutoff"] = space.cutoff();
    return j;
}

ModeSpace space_from_json(const Json& j) {
    const int n = j.at("n_modes").get<int>();
    const Statistics s = statistics_from_string(j.at("statistics").get<std::string>());
    const int cutoff = j.contains("cutoff") ? j.at("cutoff").get<int>() : 0;
    return ModeSpace::build(n, s, cutoff);
}

Json gaussian_to_json(const GaussianData& g) {
    Json j;
    j["gamma"] = matrix_to_json(g.gamma);
    j["alpha"] = matrix_to_json(g.alpha);
    j["b"] = vector_to_json(g.b);
    j["statistics"] = to_string(g.statistics);
    return j;
}

GaussianData gaussian_from_json(const Json& j) {
    GaussianData g;
    g.gamma = matrix_from_json(j.at("gamma"));
    g.alpha = matrix_from_json(j.at("alpha"));
    g.statistics = statistics_from_string(j.at("statistics").get<std::string>());
    g.b = j.contains("b") ? vector_from_json(j.at("b"))
                          : Vector::Zero(g.gamma.rows());
    return g;
}

Json bogoliubov_to_json(const BogoliubovMap& m) {
    Json j;
    j["u"] = matrix_to_json(m.u);
    j["v"] = matrix_to_json(m.v);
    j["statistics"] = to_string(m.statistics);
    return j;
}

BogoliubovMap bogoliubov_from_json(const Json& j) {
    BogoliubovMap m;
    m.u = matrix_from_json(j.at("u"));
    m.v = matrix_from_json(j.at("v"));
    m.statistics = statistics_from_string(j.at("statistics").get<std::string>());
    return m;
}

Json model_to_json(const TwoBodyHamiltonian& h) {
    Json j;
    j["h"] = matrix_to_json(h.h);
    if (h.v.size() > 0) j["V"] = matrix_to_json(h.v);
    if (h.pairing.size() > 0) j["extra_pairing"] = matrix_to_json(h.pairing);
    if (h.drive.size() > 0) j["drive"] = vector_to_json(h.drive);
    j["species"] = to_string(h.statistics);
    return j;
}

TwoBodyHamiltonian model_from_json(const Json& j) {
    TwoBodyHamiltonian h;
    h.h = matrix_from_json(j.at("h"));
    if (j.contains("V")) h.v = matrix_from_json(j.at("V"));
    if (j.contains("extra_pairing")) h.pairing = matrix_from_json(j.at("extra_pairing"));
    if (j.contains("drive")) h.drive = vector_from_json(j.at("drive"));
    h.statistics = statistics_from_string(j.at("species").get<std::string>());
    h.validate();
    return h;
}

Json params_to_json(const QuasifreeParams& p) {
    Json j;
    j["species"] = to_string(p.statistics);
    j["generator_a"] = matrix_to_json(p.gen_a);
    j["generator_b"] = matrix_to_json(p.gen_b);
    if (p.displacement.size() > 0) j["displacement"] = vector_to_json(p.displacement);
    std::vector<double> mixing(p.mixing.data(), p.mixing.data() + p.mixing.size());
    j["mixing"] = mixing;
    j["occupied_modes"] = p.occupied_modes;
    return j;
}

QuasifreeParams params_from_json(const Json& j) {
    QuasifreeParams p;
    p.statistics = statistics_from_string(j.at("species").get<std::string>());
    p.gen_a = matrix_from_json(j.at("generator_a"));
    const int n = p.n_modes();
    p.gen_b = j.contains("generator_b") ? matrix_from_json(j.at("generator_b"))
                                        : Matrix::Zero(n, n);
    p.displacement = j.contains("displacement") ? vector_from_json(j.at("displacement"))
                                                : Vector();
    if (p.statistics == Statistics::Boson && p.displacement.size() == 0)
        p.displacement = Vector::Zero(n);
    p.mixing = RealVector::Zero(n);
    if (j.contains("mixing")) {
        const auto mixing = j.at("mixing").get<std::vector<double>>();
        if (static_cast<int>(mixing.size()) != n)
            throw InvalidInput("params JSON: mixing length mismatch");
        for (int i = 0; i < n; ++i) p.mixing(i) = mixing[static_cast<std::size_t>(i)];
    }
    if (j.contains("occupied_modes"))
        p.occupied_modes = j.at("occupied_modes").get<std::vector<int>>();
    return p;
}

StateSpec state_from_json(const Json& j) {
    StateSpec spec;
    const std::string type = j.contains("type") ? j.at("type").get<std::string>() : "gaussian";
    if (type == "gaussian") {
        spec.kind = StateSpec::Kind::Gaussian;
        spec.gaussian = gaussian_from_json(j);
    } else if (type == "density") {
        spec.kind = StateSpec::Kind::Density;
        spec.density = matrix_from_json(j.at("matrix"));
    } else if (type == "quasifree") {
        spec.kind = StateSpec::Kind::Quasifree;
        spec.params = params_from_json(j.at("params"));
    } else {
        throw InvalidInput("unknown state type '" + type + "'");
    }
    return spec;
}

Matrix state_to_density(const StateSpec& spec, const ModeSpace& space,
                        const Tolerances& tol) {
    switch (spec.kind) {
        case StateSpec::Kind::Density:
            if (spec.density.rows() != space.dim())
                throw InvalidInput("density state does not match the space dimension");
            require_density_matrix(spec.density, tol);
            return spec.density;
        case StateSpec::Kind::Quasifree:
            return realize_state(spec.params, space, tol);
        case StateSpec::Kind::Gaussian:
            throw InvalidInput("a bare gaussian state has no Fock realization here; "
                               "pass quasifree parameters or a density matrix");
    }
    throw InvalidInput("unreachable state kind");
}

GaussianData state_to_gaussian(const StateSpec& spec, const ModeSpace* space,
                               const Tolerances& tol) {
    switch (spec.kind) {
        case StateSpec::Kind::Gaussian:
            return spec.gaussian;
        case StateSpec::Kind::Quasifree:
            return data_from_params(spec.params);
        case StateSpec::Kind::Density: {
            if (!space)
                throw InvalidInput("a density state needs a space description");
            return gaussian_from_density_matrix(*space, spec.density, tol);
        }
    }
    throw InvalidInput("unreachable state kind");
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidInput("JSON parse failure in '" + path + "': " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "' for digest");
    std::uint64_t hash = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    std::ostringstream hex;
    hex << std::hex << hash;
    return hex.str();
}

}  // namespace qflab
