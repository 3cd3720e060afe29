#include "reesdiag/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace reesdiag {

void LaurentPoly::add_term(long tdeg, const std::vector<long>& exps, const Rational& c) {
    if (static_cast<int>(exps.size()) != num_vars_)
        fail(ErrorKind::VariableMismatch, "exponent vector length != num_vars");
    if (tdeg >= precision_ || c == 0) return;
    Monomial m{tdeg, exps};
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly g(num_vars_, precision_);
    for (const auto& [m, c] : terms_) g.terms_[m] = -c;
    return g;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.num_vars_ != b.num_vars_)
        fail(ErrorKind::VariableMismatch, "adding polynomials on different tori");
    LaurentPoly g(a.num_vars_, std::min(a.precision_, b.precision_));
    for (const auto& [m, c] : a.terms_)
        if (m.tdeg < g.precision_) g.terms_[m] = c;
    for (const auto& [m, c] : b.terms_) {
        if (m.tdeg >= g.precision_) continue;
        auto it = g.terms_.find(m);
        if (it == g.terms_.end()) {
            g.terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) g.terms_.erase(it);
        }
    }
    return g;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly LaurentPoly::operator*(const Rational& c) const {
    LaurentPoly g(num_vars_, precision_);
    if (c == 0) return g;
    for (const auto& [m, v] : terms_) g.terms_[m] = v * c;
    return g;
}

LaurentPoly LaurentPoly::mono_mul(const Rational& c, long tdeg,
                                  const std::vector<long>& exps) const {
    LaurentPoly g(num_vars_, precision_);
    if (c == 0) return g;
    for (const auto& [m, v] : terms_) {
        Monomial m2{m.tdeg + tdeg, m.exps};
        for (size_t i = 0; i < m2.exps.size(); ++i) m2.exps[i] += exps[i];
        if (m2.tdeg < precision_) g.terms_[m2] = v * c;
    }
    return g;
}

LaurentPoly laurent_mul(const LaurentPoly& f, const LaurentPoly& g) {
    if (f.num_vars() != g.num_vars())
        fail(ErrorKind::VariableMismatch, "multiplying polynomials on different tori");
    LaurentPoly h(f.num_vars(), std::min(f.precision(), g.precision()));
    for (const auto& [mf, cf] : f.terms())
        for (const auto& [mg, cg] : g.terms()) {
            long td = mf.tdeg + mg.tdeg;
            if (td >= h.precision()) continue;
            std::vector<long> e = mf.exps;
            for (size_t i = 0; i < e.size(); ++i) e[i] += mg.exps[i];
            h.add_term(td, e, cf * cg);
        }
    return h;
}

LaurentPoly truncate(const LaurentPoly& f, long m) {
    if (m > f.precision())
        fail(ErrorKind::PrecisionIncrease, "truncate target exceeds stored precision");
    if (m <= 0) fail(ErrorKind::InvariantViolation, "truncation level must be positive");
    LaurentPoly g(f.num_vars(), m);
    for (const auto& [mon, c] : f.terms())
        if (mon.tdeg < m) g.add_term(mon.tdeg, mon.exps, c);
    return g;
}

std::string LaurentPoly::str(const std::vector<std::string>& var_names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational cc = c;
        if (first) {
            if (cc < 0) {
                os << "-";
                cc = -cc;
            }
        } else {
            os << (cc < 0 ? " - " : " + ");
            if (cc < 0) cc = -cc;
        }
        first = false;
        bool has_var = m.tdeg != 0;
        for (long e : m.exps) has_var = has_var || e != 0;
        bool coeff_shown = false;
        if (cc != 1 || !has_var) {
            os << rational_str(cc);
            coeff_shown = true;
        }
        bool lead = !coeff_shown;
        auto sep = [&]() {
            if (!lead) os << "*";
            lead = false;
        };
        if (m.tdeg != 0) {
            sep();
            os << "t";
            if (m.tdeg != 1) os << "^" << m.tdeg;
        }
        for (size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            sep();
            os << var_names[i];
            if (m.exps[i] != 1) os << "^" << m.exps[i];
        }
    }
    return os.str();
}

namespace {

// Recursive-descent parser for section expressions.
struct Parser {
    const std::string& s;
    size_t pos = 0;
    const std::vector<std::string>& vars;
    long precision;

    explicit Parser(const std::string& text, const std::vector<std::string>& v, long prec)
        : s(text), vars(v), precision(prec) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void err(const std::string& msg) {
        fail(ErrorKind::ParseError,
             msg + " at offset " + std::to_string(pos) + " in '" + s + "'");
    }

    long parse_int() {
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) err("expected integer");
        long v = std::stol(s.substr(start, pos - start));
        return neg ? -v : v;
    }

    LaurentPoly parse_expr() {
        skip_ws();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        LaurentPoly acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            if (eat('+')) {
                acc = acc + parse_term();
            } else if (eat('-')) {
                acc = acc - parse_term();
            } else {
                break;
            }
        }
        return acc;
    }

    LaurentPoly parse_term() {
        LaurentPoly acc = parse_factor();
        while (true) {
            skip_ws();
            if (eat('*')) {
                acc = laurent_mul(acc, parse_factor());
            } else {
                break;
            }
        }
        return acc;
    }

    LaurentPoly parse_factor() {
        LaurentPoly base = parse_atom();
        skip_ws();
        if (eat('^')) {
            long e = parse_int();
            return pow_poly(base, e);
        }
        return base;
    }

    LaurentPoly pow_poly(const LaurentPoly& base, long e) {
        if (e == 0) return LaurentPoly::constant(Rational(1), base.num_vars(), base.precision());
        if (e < 0) {
            // Negative powers only for single monomials (Laurent inversion).
            if (base.terms().size() != 1) err("negative power of a non-monomial");
            const auto& [m, c] = *base.terms().begin();
            if (m.tdeg > 0) err("negative power of t is not representable");
            LaurentPoly r = LaurentPoly::constant(Rational(1), base.num_vars(), base.precision());
            Rational cin = 1 / c;
            std::vector<long> negged = m.exps;
            for (auto& v : negged) v = -v;
            for (long i = 0; i < -e; ++i) r = r.mono_mul(cin, -m.tdeg, negged);
            return r;
        }
        LaurentPoly acc = base;
        for (long i = 1; i < e; ++i) acc = laurent_mul(acc, base);
        return acc;
    }

    LaurentPoly parse_atom() {
        skip_ws();
        if (pos >= s.size()) err("unexpected end of expression");
        if (eat('(')) {
            LaurentPoly inner = parse_expr();
            if (!eat(')')) err("expected ')'");
            return inner;
        }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                size_t dstart = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (pos == dstart) err("expected denominator");
            }
            Rational q = parse_rational(s.substr(start, pos - start));
            return LaurentPoly::constant(q, static_cast<int>(vars.size()), precision);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "t") return LaurentPoly::t_term(static_cast<int>(vars.size()), precision);
            for (size_t i = 0; i < vars.size(); ++i)
                if (vars[i] == name)
                    return LaurentPoly::variable(static_cast<int>(i),
                                                 static_cast<int>(vars.size()), precision);
            err("unknown variable '" + name + "'");
        }
        err("unexpected character");
    }
};

} // namespace

LaurentPoly parse_laurent(const std::string& text, const std::vector<std::string>& var_names,
                          long precision) {
    if (static_cast<int>(var_names.size()) > kMaxVars)
        fail(ErrorKind::InvariantViolation, "supported variable count is 0..8");
    Parser p(text, var_names, precision);
    LaurentPoly f = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.err("trailing input");
    return f;
}

} // namespace reesdiag
