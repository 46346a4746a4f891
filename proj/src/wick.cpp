#include "qflab/wick.hpp"

#include "qflab/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace qflab {

int LadderPolynomial::degree() const {
    std::size_t d = 0;
    for (const auto& t : terms) d = std::max(d, t.factors.size());
    return static_cast<int>(d);
}

int LadderPolynomial::max_mode() const {
    int m = 0;
    for (const auto& t : terms)
        for (const auto& f : t.factors) m = std::max(m, f.mode);
    return m;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(std::string("expected ") + what, pos);
    }

    double number() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
            ++pos;
        if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
            ++pos;
            if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        }
        double value = 0.0;
        auto res = std::from_chars(text.data() + start, text.data() + pos, value);
        if (res.ec != std::errc() || res.ptr == text.data() + start)
            throw ParseError("expected a number", start);
        return value;
    }

    int integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        int value = 0;
        auto res = std::from_chars(text.data() + start, text.data() + pos, value);
        if (res.ec != std::errc() || res.ptr == text.data() + start)
            throw ParseError("expected an integer", start);
        return value;
    }
};

bool starts_factor(char c) { return c == 'a' || c == 'c'; }
bool starts_coefficient(char c) {
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || c == '.';
}

LadderTerm parse_term(Cursor& cur, bool negated) {
    LadderTerm term;
    const char head = cur.peek();
    if (head == '(') {
        cur.expect('(', "'('");
        const double re = cur.number();
        cur.expect(',', "','");
        const double im = cur.number();
        cur.expect(')', "')'");
        term.coefficient = Complex(re, im);
    } else if (starts_coefficient(head)) {
        term.coefficient = Complex(cur.number(), 0.0);
    } else if (!starts_factor(head)) {
        throw ParseError("expected a coefficient or a ladder factor", cur.pos);
    }
    while (starts_factor(cur.peek())) {
        LadderFactor f;
        f.letter = cur.text[cur.pos];
        ++cur.pos;
        f.create = cur.accept('*');
        cur.expect('(', "'(' after operator letter");
        f.mode = cur.integer();
        if (f.mode < 1) throw ParseError("mode index must be >= 1", cur.pos);
        cur.expect(')', "')'");
        term.factors.push_back(f);
    }
    if (negated) term.coefficient = -term.coefficient;
    return term;
}

std::string format_real(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void print_term(std::string& out, const LadderTerm& term, bool leading) {
    Complex coeff = term.coefficient;
    if (coeff.imag() == 0.0) {
        double re = coeff.real();
        if (!leading) {
            out += re < 0.0 ? " - " : " + ";
            re = std::abs(re);
        } else if (re < 0.0) {
            out += "-";
            re = std::abs(re);
        }
        if (re != 1.0 || term.factors.empty()) {
            out += format_real(re);
            if (!term.factors.empty()) out += " ";
        }
    } else {
        if (!leading) out += " + ";
        out += "(" + format_real(coeff.real()) + "," + format_real(coeff.imag()) + ")";
        if (!term.factors.empty()) out += " ";
    }
    for (std::size_t i = 0; i < term.factors.size(); ++i) {
        const auto& f = term.factors[i];
        if (i > 0) out += " ";
        out += f.letter;
        if (f.create) out += "*";
        out += "(" + std::to_string(f.mode) + ")";
    }
}

}  // namespace

LadderPolynomial parse(const std::string& text) {
    Cursor cur{text};
    LadderPolynomial poly;
    if (cur.done()) throw ParseError("empty expression", 0);
    bool negated = false;
    if (cur.accept('-'))
        negated = true;
    else
        cur.accept('+');
    poly.terms.push_back(parse_term(cur, negated));
    while (!cur.done()) {
        if (cur.accept('+'))
            negated = false;
        else if (cur.accept('-'))
            negated = true;
        else
            throw ParseError("expected '+' or '-' between terms", cur.pos);
        poly.terms.push_back(parse_term(cur, negated));
    }
    return poly;
}

std::string to_string(const LadderPolynomial& poly) {
    std::string out;
    for (std::size_t i = 0; i < poly.terms.size(); ++i)
        print_term(out, poly.terms[i], i == 0);
    return out;
}

ContractionTable::ContractionTable(const GaussianData& g) {
    statistics = g.statistics;
    const GaussianData centered = recenter(g);
    gamma = centered.gamma;
    alpha = centered.alpha;
    b = g.b;
}

Complex ContractionTable::pair(const LadderFactor& f1, const LadderFactor& f2) const {
    const int i = f1.mode - 1;
    const int j = f2.mode - 1;
    const double sign = statistics == Statistics::Boson ? 1.0 : -1.0;
    if (f1.create && f2.create) return std::conj(alpha(i, j));
    if (f1.create && !f2.create) return gamma(j, i);
    if (!f1.create && f2.create)
        return (i == j ? 1.0 : 0.0) + sign * gamma(i, j);
    return alpha(j, i);
}

Complex ContractionTable::singleton(const LadderFactor& f) const {
    return f.create ? std::conj(b(f.mode - 1)) : b(f.mode - 1);
}

Complex fermion_quasifree_expectation(const GaussianData& g,
                                      const std::vector<LadderFactor>& monomial) {
    if (g.statistics != Statistics::Fermion)
        throw InvalidInput("fermion_quasifree_expectation: fermion data required");
    const std::size_t m = monomial.size();
    if (m == 0) return Complex(1.0, 0.0);
    if (m % 2 == 1) return Complex(0.0, 0.0);  // even states
    const ContractionTable table(g);
    Matrix pair_matrix = Matrix::Zero(m, m);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = p + 1; q < m; ++q) {
            const Complex value = table.pair(monomial[p], monomial[q]);
            pair_matrix(p, q) = value;
            pair_matrix(q, p) = -value;
        }
    return pfaffian(pair_matrix);
}

namespace {

Complex boson_moment(const ContractionTable& table,
                     const std::vector<LadderFactor>& monomial,
                     std::vector<int>& alive, int n_alive) {
    if (n_alive == 0) return Complex(1.0, 0.0);
    int first = -1;
    for (std::size_t i = 0; i < alive.size(); ++i)
        if (alive[i]) { first = static_cast<int>(i); break; }
    alive[first] = 0;
    Complex acc = table.singleton(monomial[static_cast<std::size_t>(first)]) *
                  boson_moment(table, monomial, alive, n_alive - 1);
    for (std::size_t q = static_cast<std::size_t>(first) + 1; q < alive.size(); ++q) {
        if (!alive[q]) continue;
        alive[q] = 0;
        acc += table.pair(monomial[static_cast<std::size_t>(first)], monomial[q]) *
               boson_moment(table, monomial, alive, n_alive - 2);
        alive[q] = 1;
    }
    alive[first] = 1;
    return acc;
}

}  // namespace

Complex boson_quasifree_expectation(const GaussianData& g,
                                    const std::vector<LadderFactor>& monomial) {
    if (g.statistics != Statistics::Boson)
        throw InvalidInput("boson_quasifree_expectation: boson data required");
    if (monomial.empty()) return Complex(1.0, 0.0);
    const ContractionTable table(g);
    std::vector<int> alive(monomial.size(), 1);
    return boson_moment(table, monomial, alive, static_cast<int>(monomial.size()));
}

Complex quasifree_expectation(const GaussianData& g,
                              const std::vector<LadderFactor>& monomial) {
    return g.statistics == Statistics::Boson
               ? boson_quasifree_expectation(g, monomial)
               : fermion_quasifree_expectation(g, monomial);
}

Complex quasifree_expectation(const GaussianData& g, const LadderPolynomial& poly) {
    Complex acc(0.0, 0.0);
    for (const auto& term : poly.terms)
        acc += term.coefficient * quasifree_expectation(g, term.factors);
    return acc;
}

Matrix two_pdm_from_gaussian(const GaussianData& g) {
    const int n = g.n_modes();
    Matrix gamma2(n * n, n * n);
    std::vector<LadderFactor> mono(4);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    mono[0] = {l + 1, true};
                    mono[1] = {k + 1, true};
                    mono[2] = {i + 1, false};
                    mono[3] = {j + 1, false};
                    gamma2(i * n + j, k * n + l) = quasifree_expectation(g, mono);
                }
    return gamma2;
}

Complex oracle_expectation(const ModeSpace& space, const Matrix& rho,
                           const LadderPolynomial& poly, const Tolerances& tol) {
    require_density_matrix(rho, tol);
    if (poly.max_mode() > space.n_modes())
        throw InvalidInput("oracle_expectation: polynomial addresses a missing mode");
    if (space.statistics() == Statistics::Boson) {
        const int margin = space.cutoff() - poly.degree();
        const double leak = space.occupation_mass_above(rho, margin);
        if (leak > tol.cutoff_mass)
            throw CutoffUnsafe("oracle_expectation: occupation mass " +
                               std::to_string(leak) + " within one monomial degree of "
                               "the cutoff");
    }
    Complex acc(0.0, 0.0);
    for (const auto& term : poly.terms) {
        Matrix product = rho;
        for (const auto& f : term.factors)
            product = product * (f.create ? space.creator_sparse(f.mode)
                                          : space.annihilator_sparse(f.mode));
        acc += term.coefficient * product.trace();
    }
    return acc;
}

}  // namespace qflab
