#include "reesdiag/subspace.hpp"

#include "reesdiag/errors.hpp"

#include <sstream>

namespace reesdiag {

Subspace Subspace::span(int ambient_dim, QMatrix vectors) {
    Subspace s;
    s.ambient_dim_ = ambient_dim;
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != ambient_dim)
            fail(ErrorKind::DimensionMismatch, "vector length != ambient dimension");
    s.basis_ = std::move(vectors);
    s.pivots_ = rref(s.basis_);
    return s;
}

Subspace Subspace::full(int ambient_dim) {
    QMatrix id(static_cast<size_t>(ambient_dim),
               QVec(static_cast<size_t>(ambient_dim), Rational(0)));
    for (int i = 0; i < ambient_dim; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return span(ambient_dim, std::move(id));
}

bool Subspace::contains(const QVec& v) const {
    if (static_cast<int>(v.size()) != ambient_dim_)
        fail(ErrorKind::DimensionMismatch, "vector length != ambient dimension");
    return in_row_space(basis_, pivots_, v);
}

bool Subspace::contains(const Subspace& other) const {
    for (const auto& row : other.basis_)
        if (!contains(row)) return false;
    return true;
}

Subspace operator+(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim_ != b.ambient_dim_)
        fail(ErrorKind::DimensionMismatch, "subspace sum across different ambient spaces");
    QMatrix rows = a.basis_;
    rows.insert(rows.end(), b.basis_.begin(), b.basis_.end());
    return Subspace::span(a.ambient_dim_, std::move(rows));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim_ != b.ambient_dim_)
        fail(ErrorKind::DimensionMismatch, "subspace intersection across different ambient spaces");
    // A ∩ B = ker(ann(A) ∪ ann(B)); annihilators are kernels of the basis
    // rows read as functionals.
    int n = a.ambient_dim_;
    QMatrix ann_a = kernel(a.basis_.empty() ? QMatrix{QVec(static_cast<size_t>(n), Rational(0))}
                                            : a.basis_,
                           n);
    QMatrix ann_b = kernel(b.basis_.empty() ? QMatrix{QVec(static_cast<size_t>(n), Rational(0))}
                                            : b.basis_,
                           n);
    QMatrix stacked = ann_a;
    stacked.insert(stacked.end(), ann_b.begin(), ann_b.end());
    if (stacked.empty()) return Subspace::full(n);
    return Subspace::span(n, kernel(stacked, n));
}

QMatrix Subspace::extend_to(const Subspace& outer) const {
    if (!outer.contains(*this))
        fail(ErrorKind::InvariantViolation, "extend_to: inner subspace not contained in outer");
    QMatrix work = basis_;
    std::vector<int> piv = pivots_;
    QMatrix added;
    for (const auto& row : outer.basis_) {
        QVec r = reduce_against(work, piv, row);
        if (is_zero_vec(r)) continue;
        added.push_back(r);
        work.push_back(std::move(r));
        piv = rref(work);
    }
    return added;
}

std::string Subspace::str() const {
    std::ostringstream os;
    os << "span{";
    for (size_t i = 0; i < basis_.size(); ++i) {
        if (i) os << "; ";
        os << "(";
        for (size_t j = 0; j < basis_[i].size(); ++j) {
            if (j) os << ",";
            os << rational_str(basis_[i][j]);
        }
        os << ")";
    }
    os << "}";
    return os.str();
}

} // namespace reesdiag
