#pragma once

#include "reesdiag/errors.hpp"
#include "reesdiag/rational.hpp"
#include "reesdiag/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace reesdiag {

constexpr int kMaxVars = 8;

// Monomial key: t-degree plus an integer exponent vector on the torus
// variables. Laurent exponents are allowed everywhere.
struct Monomial {
    long tdeg = 0;
    std::vector<long> exps;

    auto operator<=>(const Monomial&) const = default;
};

// Multivariate Laurent polynomial with TruncatedSeries-style t-tracking:
// exact terms below `precision`, nothing stored at or above it.
class LaurentPoly {
  public:
    LaurentPoly() : num_vars_(0), precision_(1) {}
    LaurentPoly(int num_vars, long precision) : num_vars_(num_vars), precision_(precision) {
        if (num_vars < 0 || num_vars > kMaxVars)
            fail(ErrorKind::InvariantViolation, "supported variable count is 0..8");
        if (precision <= 0) fail(ErrorKind::InvariantViolation, "precision must be positive");
    }

    static LaurentPoly constant(const Rational& c, int num_vars, long precision) {
        LaurentPoly f(num_vars, precision);
        f.add_term(0, std::vector<long>(static_cast<size_t>(num_vars), 0), c);
        return f;
    }
    static LaurentPoly variable(int i, int num_vars, long precision) {
        LaurentPoly f(num_vars, precision);
        std::vector<long> e(static_cast<size_t>(num_vars), 0);
        e[static_cast<size_t>(i)] = 1;
        f.add_term(0, e, Rational(1));
        return f;
    }
    static LaurentPoly t_term(int num_vars, long precision) {
        LaurentPoly f(num_vars, precision);
        f.add_term(1, std::vector<long>(static_cast<size_t>(num_vars), 0), Rational(1));
        return f;
    }

    int num_vars() const { return num_vars_; }
    long precision() const { return precision_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(long tdeg, const std::vector<long>& exps, const Rational& c);

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly operator*(const Rational& c) const;
    // Multiply by c * t^k * x^e.
    LaurentPoly mono_mul(const Rational& c, long tdeg, const std::vector<long>& exps) const;
    bool operator==(const LaurentPoly& o) const {
        return num_vars_ == o.num_vars_ && precision_ == o.precision_ && terms_ == o.terms_;
    }

    std::string str(const std::vector<std::string>& var_names) const;

  private:
    std::map<Monomial, Rational> terms_;
    int num_vars_;
    long precision_;
};

// Exact product truncated at min(precision). Throws VariableMismatch if
// the factors live on different tori.
LaurentPoly laurent_mul(const LaurentPoly& f, const LaurentPoly& g);

// Drops all terms of t-degree >= m and lowers the stated precision to m.
LaurentPoly truncate(const LaurentPoly& f, long m);

// Parses "+-*^()"-expressions over the named variables, "t" and rational
// literals, e.g. "1 + t*x^-1" or "3/2*x*y^2 - t^3".
LaurentPoly parse_laurent(const std::string& text, const std::vector<std::string>& var_names,
                          long precision);

} // namespace reesdiag
