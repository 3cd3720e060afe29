#pragma once

#include "reesdiag/qlinalg.hpp"

#include <string>

namespace reesdiag {

// Subspace of Q^n in canonical reduced-row-echelon form, so equality of
// subspaces is equality of matrices.
class Subspace {
  public:
    Subspace() : ambient_dim_(0) {}
    static Subspace span(int ambient_dim, QMatrix vectors);
    static Subspace zero(int ambient_dim) { return span(ambient_dim, {}); }
    static Subspace full(int ambient_dim);

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const QMatrix& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool contains(const QVec& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& o) const {
        return ambient_dim_ == o.ambient_dim_ && basis_ == o.basis_;
    }

    friend Subspace operator+(const Subspace& a, const Subspace& b);
    friend Subspace intersect(const Subspace& a, const Subspace& b);

    // Rows extending a basis of `this` to a basis of `outer`; `this` must
    // be contained in `outer`. Deterministic: reduces outer's echelon rows
    // in order and keeps the survivors.
    QMatrix extend_to(const Subspace& outer) const;

    std::string str() const;

  private:
    int ambient_dim_;
    QMatrix basis_;
    std::vector<int> pivots_;
};

} // namespace reesdiag
