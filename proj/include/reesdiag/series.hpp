#pragma once

#include "reesdiag/errors.hpp"
#include "reesdiag/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace reesdiag {

// Extended t-order: either a finite value or "no nonzero coefficient
// below the stated precision". Zero mod t^N is never conflated with an
// exact zero order.
struct ExtOrd {
    bool finite = true;
    long value = 0; // order if finite, else the precision bound

    static ExtOrd at(long v) { return {true, v}; }
    static ExtOrd above_precision(long n) { return {false, n}; }
    bool operator==(const ExtOrd&) const = default;
};

// Element of Q[[t]] / t^N with sparse exact coefficients. Immutable in
// spirit: all operations return fresh values.
class TruncatedSeries {
  public:
    TruncatedSeries() : precision_(1) {}
    explicit TruncatedSeries(long precision) : precision_(precision) {
        if (precision <= 0) fail(ErrorKind::InvariantViolation, "precision must be positive");
    }
    TruncatedSeries(const Rational& c, long precision) : TruncatedSeries(precision) {
        set_coeff(0, c);
    }

    static TruncatedSeries zero(long precision) { return TruncatedSeries(precision); }
    static TruncatedSeries one(long precision) { return TruncatedSeries(Rational(1), precision); }
    static TruncatedSeries t_power(long k, long precision) {
        TruncatedSeries f(precision);
        f.set_coeff(k, Rational(1));
        return f;
    }

    long precision() const { return precision_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<long, Rational>& coeffs() const { return coeffs_; }

    Rational coeff(long k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    void set_coeff(long k, const Rational& c) {
        if (k < 0) fail(ErrorKind::InvariantViolation, "negative t-degree in series");
        if (k >= precision_ || c == 0)
            coeffs_.erase(k);
        else
            coeffs_[k] = c;
    }

    ExtOrd ord() const {
        if (coeffs_.empty()) return ExtOrd::above_precision(precision_);
        return ExtOrd::at(coeffs_.begin()->first);
    }

    TruncatedSeries truncated(long m) const;

    // t^k * f (k >= 0), same precision.
    TruncatedSeries t_shift(long k) const;

    // f / t^k; requires every stored degree >= k. Result precision drops
    // by k (higher coefficients are unknowable).
    TruncatedSeries t_unshift(long k) const;

    // Multiplicative inverse; requires a unit (nonzero constant term).
    TruncatedSeries inverse() const;

    TruncatedSeries operator-() const;
    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries operator*(const Rational& c) const;
    bool operator==(const TruncatedSeries& o) const {
        return precision_ == o.precision_ && coeffs_ == o.coeffs_;
    }

    std::string str() const;

  private:
    std::map<long, Rational> coeffs_;
    long precision_;
};

ExtOrd ord_t(const TruncatedSeries& f);

} // namespace reesdiag
