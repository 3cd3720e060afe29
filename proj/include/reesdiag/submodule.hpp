#pragma once

#include "reesdiag/qlinalg.hpp"
#include "reesdiag/series.hpp"
#include "reesdiag/subspace.hpp"

#include <string>
#include <vector>

namespace reesdiag {

// Element of R^n, R = Q[[t]]/t^N.
using SVec = std::vector<TruncatedSeries>;

SVec svec_zero(int n, long precision);
SVec svec_t_shift(const SVec& v, long k);
SVec svec_truncated(const SVec& v, long m);
SVec svec_add(const SVec& a, const SVec& b);
SVec svec_scale(const SVec& a, const TruncatedSeries& c);
bool svec_is_zero(const SVec& v);
std::string svec_str(const SVec& v);

// Submodule U of R^n containing t^M R^n, M = floor_exponent (minimal).
// U is determined by its image in (Q[t]/t^M)^n; that image is stored as a
// canonical Q-RREF matrix in the flattened coordinates (column j, t-degree
// k) -> j*M + k. RREF is unique, so submodule equality is matrix equality.
// A triangular presentation with t-power pivots is derived on demand
// (hermite_rows); all arithmetic goes through the exact linearization, so
// no series division ever loses precision.
class Submodule {
  public:
    Submodule() : n_(0), floor_(0) {}

    // U := R-span(generators) + t^floor R^n. Requires every generator to
    // carry precision >= floor (PrecisionExhausted otherwise).
    static Submodule from_generators(int n, const std::vector<SVec>& generators, long floor);
    static Submodule full(int n) { return from_generators(n, {}, 0); }
    static Submodule t_power_full(int n, long m); // t^m R^n

    int ambient_rank() const { return n_; }
    long floor_exponent() const { return floor_; }
    const QMatrix& linearization() const { return lin_; }

    bool is_full() const { return floor_ == 0; }

    // dim_Q of the image of U in (R/t^m)^n, m >= floor.
    long qdim_at(long m) const {
        return static_cast<long>(lin_.size()) + static_cast<long>(n_) * (m - floor_);
    }

    bool contains(const SVec& v) const;
    bool contains(const Submodule& other) const;
    bool operator==(const Submodule& o) const {
        return n_ == o.n_ && floor_ == o.floor_ && lin_ == o.lin_;
    }

    Submodule t_scaled(long k) const; // t^k U
    // Image of U in (R/t^i)^n viewed again as a stored submodule (floor <= i).
    Submodule reduced_mod(long i) const;
    Subspace reduce_mod_t() const; // image in Q^n

    friend Submodule module_sum(const Submodule& a, const Submodule& b);
    friend Submodule module_intersect(const Submodule& a, const Submodule& b);

    // Derived triangular presentation: one row per column j whose minimal
    // pivot order e_j is < floor; row j starts with t^{e_j} in column j.
    std::vector<SVec> hermite_rows() const;
    // e_j per column (floor when the column has no pivot below the floor).
    std::vector<long> pivot_orders() const;

    // Q-basis vectors of U mod t^m extending a basis of W mod t^m; W must
    // be contained in U. Deterministic echelon extension.
    std::vector<SVec> extend_from(const Submodule& w, long m) const;

    // Flattening helpers (exposed for the filtration layer).
    static QVec flatten(const SVec& v, long m);
    static SVec unflatten(const QVec& q, int n, long m, long precision);

    std::string str() const;

  private:
    int n_;
    long floor_;
    QMatrix lin_;          // RREF rows, flattened at floor_
    std::vector<int> piv_; // pivot coordinates of lin_

    void canonicalize(QMatrix rows, long floor);
    QMatrix lin_at(long m) const; // RREF of the image at floor m >= floor_
};

} // namespace reesdiag
