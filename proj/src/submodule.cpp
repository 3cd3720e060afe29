#include "reesdiag/submodule.hpp"

#include "reesdiag/errors.hpp"

#include <algorithm>
#include <sstream>

namespace reesdiag {

SVec svec_zero(int n, long precision) {
    return SVec(static_cast<size_t>(n), TruncatedSeries::zero(precision));
}

SVec svec_t_shift(const SVec& v, long k) {
    SVec out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(e.t_shift(k));
    return out;
}

SVec svec_truncated(const SVec& v, long m) {
    SVec out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(e.truncated(m));
    return out;
}

SVec svec_add(const SVec& a, const SVec& b) {
    if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "svec_add: rank mismatch");
    SVec out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
}

SVec svec_scale(const SVec& a, const TruncatedSeries& c) {
    SVec out;
    out.reserve(a.size());
    for (const auto& e : a) out.push_back(e * c);
    return out;
}

bool svec_is_zero(const SVec& v) {
    for (const auto& e : v)
        if (!e.is_zero()) return false;
    return true;
}

std::string svec_str(const SVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i].str();
    }
    os << ")";
    return os.str();
}

QVec Submodule::flatten(const SVec& v, long m) {
    QVec q(v.size() * static_cast<size_t>(m), Rational(0));
    for (size_t j = 0; j < v.size(); ++j)
        for (const auto& [k, c] : v[j].coeffs())
            if (k < m) q[j * static_cast<size_t>(m) + static_cast<size_t>(k)] = c;
    return q;
}

SVec Submodule::unflatten(const QVec& q, int n, long m, long precision) {
    SVec v = svec_zero(n, precision);
    for (int j = 0; j < n; ++j)
        for (long k = 0; k < m; ++k) {
            const Rational& c = q[static_cast<size_t>(j) * static_cast<size_t>(m) +
                                  static_cast<size_t>(k)];
            if (c != 0) v[static_cast<size_t>(j)].set_coeff(k, c);
        }
    return v;
}

void Submodule::canonicalize(QMatrix rows, long floor) {
    floor_ = floor;
    lin_ = std::move(rows);
    piv_ = rref(lin_);
    if (floor_ == 0) return;

    // Minimal floor: smallest m with t^m e_j in U for all j.
    long mstar = floor_;
    for (long m = 0; m < floor_; ++m) {
        bool all_in = true;
        for (int j = 0; j < n_ && all_in; ++j) {
            QVec probe(static_cast<size_t>(n_) * static_cast<size_t>(floor_), Rational(0));
            probe[static_cast<size_t>(j) * static_cast<size_t>(floor_) + static_cast<size_t>(m)] =
                1;
            all_in = in_row_space(lin_, piv_, probe);
        }
        if (all_in) {
            mstar = m;
            break;
        }
    }
    if (mstar == floor_) return;

    // Re-linearize at the minimal floor (truncation commutes with t-spans).
    QMatrix reduced;
    for (const auto& row : lin_) {
        QVec r(static_cast<size_t>(n_) * static_cast<size_t>(mstar), Rational(0));
        bool nonzero = false;
        for (int j = 0; j < n_; ++j)
            for (long k = 0; k < mstar; ++k) {
                const Rational& c = row[static_cast<size_t>(j) * static_cast<size_t>(floor_) +
                                        static_cast<size_t>(k)];
                if (c != 0) {
                    r[static_cast<size_t>(j) * static_cast<size_t>(mstar) +
                      static_cast<size_t>(k)] = c;
                    nonzero = true;
                }
            }
        if (nonzero) reduced.push_back(std::move(r));
    }
    floor_ = mstar;
    lin_ = std::move(reduced);
    piv_ = rref(lin_);
}

Submodule Submodule::from_generators(int n, const std::vector<SVec>& generators, long floor) {
    if (n <= 0) fail(ErrorKind::InvariantViolation, "ambient rank must be positive");
    if (floor < 0) fail(ErrorKind::InvariantViolation, "negative floor exponent");
    Submodule u;
    u.n_ = n;
    if (floor == 0) {
        u.floor_ = 0;
        return u;
    }
    QMatrix rows;
    for (const auto& g : generators) {
        if (static_cast<int>(g.size()) != n)
            fail(ErrorKind::DimensionMismatch, "generator has wrong rank");
        for (const auto& e : g)
            if (e.precision() < floor)
                fail(ErrorKind::PrecisionExhausted,
                     "generator precision " + std::to_string(e.precision()) +
                         " below required floor " + std::to_string(floor));
        for (long k = 0; k < floor; ++k) {
            QVec row = flatten(svec_t_shift(g, k), floor);
            if (!is_zero_vec(row)) rows.push_back(std::move(row));
        }
    }
    u.canonicalize(std::move(rows), floor);
    return u;
}

Submodule Submodule::t_power_full(int n, long m) {
    Submodule u;
    u.n_ = n;
    u.floor_ = m;
    // image of t^m R^n in (R/t^m)^n is zero
    return u;
}

bool Submodule::contains(const SVec& v) const {
    if (static_cast<int>(v.size()) != n_)
        fail(ErrorKind::DimensionMismatch, "contains: rank mismatch");
    if (floor_ == 0) return true;
    for (const auto& e : v)
        if (e.precision() < floor_)
            fail(ErrorKind::PrecisionExhausted, "element precision below module floor");
    return in_row_space(lin_, piv_, flatten(v, floor_));
}

QMatrix Submodule::lin_at(long m) const {
    if (m < floor_) fail(ErrorKind::Internal, "lin_at below floor");
    if (m == floor_) return lin_;
    QMatrix rows;
    size_t width = static_cast<size_t>(n_) * static_cast<size_t>(m);
    for (const auto& row : lin_) {
        QVec r(width, Rational(0));
        for (int j = 0; j < n_; ++j)
            for (long k = 0; k < floor_; ++k)
                r[static_cast<size_t>(j) * static_cast<size_t>(m) + static_cast<size_t>(k)] =
                    row[static_cast<size_t>(j) * static_cast<size_t>(floor_) +
                        static_cast<size_t>(k)];
        rows.push_back(std::move(r));
    }
    for (int j = 0; j < n_; ++j)
        for (long k = floor_; k < m; ++k) {
            QVec r(width, Rational(0));
            r[static_cast<size_t>(j) * static_cast<size_t>(m) + static_cast<size_t>(k)] = 1;
            rows.push_back(std::move(r));
        }
    rref(rows);
    return rows;
}

bool Submodule::contains(const Submodule& other) const {
    if (n_ != other.n_) fail(ErrorKind::DimensionMismatch, "contains: rank mismatch");
    long m = std::max(floor_, other.floor_);
    if (m == 0) return true;
    QMatrix mine = lin_at(m);
    std::vector<int> piv;
    {
        QMatrix tmp = mine;
        piv = rref(tmp);
        mine = std::move(tmp);
    }
    QMatrix theirs = other.lin_at(m);
    for (const auto& row : theirs)
        if (!in_row_space(mine, piv, row)) return false;
    return true;
}

Submodule Submodule::t_scaled(long k) const {
    if (k == 0) return *this;
    std::vector<SVec> gens;
    for (const auto& row : lin_)
        gens.push_back(svec_t_shift(unflatten(row, n_, floor_, floor_ + k), k));
    if (floor_ == 0)
        for (int j = 0; j < n_; ++j) {
            SVec e = svec_zero(n_, k + 1);
            e[static_cast<size_t>(j)] = TruncatedSeries::t_power(k, k + 1);
            gens.push_back(std::move(e));
        }
    return from_generators(n_, gens, floor_ + k);
}

Submodule Submodule::reduced_mod(long i) const {
    if (i <= 0) fail(ErrorKind::InvariantViolation, "reduction level must be positive");
    if (i >= floor_) return *this;
    std::vector<SVec> gens;
    for (const auto& row : lin_) gens.push_back(svec_truncated(unflatten(row, n_, floor_, floor_), i));
    return from_generators(n_, gens, i);
}

Subspace Submodule::reduce_mod_t() const {
    if (floor_ == 0) return Subspace::full(n_);
    QMatrix consts;
    for (const auto& row : lin_) {
        QVec c(static_cast<size_t>(n_), Rational(0));
        bool nonzero = false;
        for (int j = 0; j < n_; ++j) {
            const Rational& v = row[static_cast<size_t>(j) * static_cast<size_t>(floor_)];
            if (v != 0) nonzero = true;
            c[static_cast<size_t>(j)] = v;
        }
        if (nonzero) consts.push_back(std::move(c));
    }
    return Subspace::span(n_, std::move(consts));
}

Submodule module_sum(const Submodule& a, const Submodule& b) {
    if (a.n_ != b.n_) fail(ErrorKind::DimensionMismatch, "module_sum: rank mismatch");
    long floor = std::min(a.floor_, b.floor_);
    if (floor == 0) return Submodule::full(a.n_);
    // everything above t^floor is absorbed into the floor term
    std::vector<SVec> gens;
    for (const auto& row : a.lin_)
        gens.push_back(Submodule::unflatten(row, a.n_, a.floor_, a.floor_));
    for (const auto& row : b.lin_)
        gens.push_back(Submodule::unflatten(row, b.n_, b.floor_, b.floor_));
    return Submodule::from_generators(a.n_, gens, floor);
}

Submodule module_intersect(const Submodule& a, const Submodule& b) {
    if (a.n_ != b.n_) fail(ErrorKind::DimensionMismatch, "module_intersect: rank mismatch");
    long m = std::max(a.floor_, b.floor_);
    if (m == 0) return Submodule::full(a.n_);
    int width = a.n_ * static_cast<int>(m);
    Subspace sa = Subspace::span(width, a.lin_at(m));
    Subspace sb = Subspace::span(width, b.lin_at(m));
    Subspace si = intersect(sa, sb);
    std::vector<SVec> gens;
    for (const auto& row : si.basis()) gens.push_back(Submodule::unflatten(row, a.n_, m, m));
    return Submodule::from_generators(a.n_, gens, m);
}

std::vector<SVec> Submodule::hermite_rows() const {
    std::vector<SVec> rows;
    std::vector<bool> seen(static_cast<size_t>(n_), false);
    for (size_t i = 0; i < lin_.size(); ++i) {
        int col = piv_[i] / static_cast<int>(floor_);
        if (seen[static_cast<size_t>(col)]) continue;
        seen[static_cast<size_t>(col)] = true;
        rows.push_back(unflatten(lin_[i], n_, floor_, std::max<long>(floor_, 1)));
    }
    return rows;
}

std::vector<long> Submodule::pivot_orders() const {
    std::vector<long> e(static_cast<size_t>(n_), floor_);
    if (floor_ == 0) return e;
    for (size_t i = 0; i < lin_.size(); ++i) {
        int col = piv_[i] / static_cast<int>(floor_);
        long deg = piv_[i] % floor_;
        if (deg < e[static_cast<size_t>(col)]) e[static_cast<size_t>(col)] = deg;
    }
    return e;
}

std::vector<SVec> Submodule::extend_from(const Submodule& w, long m) const {
    if (!contains(w)) fail(ErrorKind::InvariantViolation, "extend_from: not a submodule of this");
    long mm = std::max({m, floor_, w.floor_});
    QMatrix inner = w.lin_at(mm);
    std::vector<int> piv;
    {
        QMatrix tmp = inner;
        piv = rref(tmp);
        inner = std::move(tmp);
    }
    std::vector<SVec> out;
    for (const auto& row : lin_at(mm)) {
        QVec r = reduce_against(inner, piv, row);
        if (is_zero_vec(r)) continue;
        out.push_back(unflatten(r, n_, mm, mm));
        inner.push_back(std::move(r));
        piv = rref(inner);
    }
    return out;
}

std::string Submodule::str() const {
    std::ostringstream os;
    os << "Submodule(rank " << n_ << ", floor " << floor_ << ")[";
    auto rows = hermite_rows();
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) os << "; ";
        os << svec_str(rows[i]);
    }
    os << "]";
    return os.str();
}

} // namespace reesdiag
