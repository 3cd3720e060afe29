#include "reesdiag/series.hpp"

#include <algorithm>
#include <sstream>

namespace reesdiag {

TruncatedSeries TruncatedSeries::truncated(long m) const {
    if (m > precision_)
        fail(ErrorKind::PrecisionIncrease,
             "cannot raise series precision from " + std::to_string(precision_) + " to " +
                 std::to_string(m));
    TruncatedSeries g(m);
    for (const auto& [k, c] : coeffs_)
        if (k < m) g.coeffs_[k] = c;
    return g;
}

TruncatedSeries TruncatedSeries::t_shift(long k) const {
    TruncatedSeries g(precision_);
    for (const auto& [d, c] : coeffs_)
        if (d + k < precision_) g.coeffs_[d + k] = c;
    return g;
}

TruncatedSeries TruncatedSeries::t_unshift(long k) const {
    if (k == 0) return *this;
    if (precision_ - k <= 0)
        fail(ErrorKind::PrecisionExhausted, "t_unshift exhausts precision");
    TruncatedSeries g(precision_ - k);
    for (const auto& [d, c] : coeffs_) {
        if (d < k) fail(ErrorKind::InvariantViolation, "series not divisible by t^k");
        g.coeffs_[d - k] = c;
    }
    return g;
}

TruncatedSeries TruncatedSeries::inverse() const {
    Rational a0 = coeff(0);
    if (a0 == 0) fail(ErrorKind::InvariantViolation, "inverse of a non-unit series");
    TruncatedSeries b(precision_);
    std::vector<Rational> bc(static_cast<size_t>(precision_), Rational(0));
    bc[0] = 1 / a0;
    for (long k = 1; k < precision_; ++k) {
        Rational acc(0);
        for (const auto& [j, aj] : coeffs_) {
            if (j == 0 || j > k) continue;
            acc += aj * bc[static_cast<size_t>(k - j)];
        }
        bc[static_cast<size_t>(k)] = -acc / a0;
    }
    for (long k = 0; k < precision_; ++k) b.set_coeff(k, bc[static_cast<size_t>(k)]);
    return b;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries g(precision_);
    for (const auto& [k, c] : coeffs_) g.coeffs_[k] = -c;
    return g;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries g(std::min(a.precision_, b.precision_));
    for (const auto& [k, c] : a.coeffs_)
        if (k < g.precision_) g.coeffs_[k] = c;
    for (const auto& [k, c] : b.coeffs_) {
        if (k >= g.precision_) continue;
        auto it = g.coeffs_.find(k);
        if (it == g.coeffs_.end()) {
            g.coeffs_[k] = c;
        } else {
            it->second += c;
            if (it->second == 0) g.coeffs_.erase(it);
        }
    }
    return g;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a + (-b);
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries g(std::min(a.precision_, b.precision_));
    for (const auto& [i, ci] : a.coeffs_) {
        if (i >= g.precision_) continue;
        for (const auto& [j, cj] : b.coeffs_) {
            if (i + j >= g.precision_) break;
            auto it = g.coeffs_.find(i + j);
            if (it == g.coeffs_.end()) {
                g.coeffs_[i + j] = ci * cj;
                if (g.coeffs_[i + j] == 0) g.coeffs_.erase(i + j);
            } else {
                it->second += ci * cj;
                if (it->second == 0) g.coeffs_.erase(it);
            }
        }
    }
    return g;
}

TruncatedSeries TruncatedSeries::operator*(const Rational& c) const {
    TruncatedSeries g(precision_);
    if (c == 0) return g;
    for (const auto& [k, v] : coeffs_) g.coeffs_[k] = v * c;
    return g;
}

std::string TruncatedSeries::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        if (k == 0) {
            os << rational_str(c);
        } else {
            if (c != 1) os << rational_str(c) << "*";
            os << "t";
            if (k != 1) os << "^" << k;
        }
    }
    return os.str();
}

ExtOrd ord_t(const TruncatedSeries& f) { return f.ord(); }

} // namespace reesdiag
