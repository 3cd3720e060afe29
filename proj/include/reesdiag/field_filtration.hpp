#pragma once

#include "reesdiag/subspace.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reesdiag {

// Decreasing filtration of Q^n with rational jumps. Stored jumps are the
// complete value profile: (lambda_i, F^{lambda_i}) with lambda strictly
// increasing, spaces strictly decreasing, the first space equal to Q^n.
// F^mu is the space stored at the smallest jump >= mu (left-continuity,
// i.e. F^lambda = \cap_{mu<lambda} F^mu) and zero beyond the last jump.
//
// Rational jumps lose nothing relative to real ones here: every filtration
// this library produces is (1/d)Z-valued for some d.
class FieldFiltration {
  public:
    FieldFiltration() : ambient_dim_(0) {}
    // jumps need not start with the full space; a leading (base_lambda,
    // full) entry is implied to be the first entry and must be supplied.
    static FieldFiltration from_jumps(int ambient_dim,
                                      std::vector<std::pair<Rational, Subspace>> jumps);
    // Convenience: full space at lambda 0, then the given proper steps.
    static FieldFiltration from_steps(int ambient_dim,
                                      std::vector<std::pair<Rational, Subspace>> steps);

    int ambient_dim() const { return ambient_dim_; }
    const std::vector<std::pair<Rational, Subspace>>& jumps() const { return jumps_; }

    const Subspace& value(const Rational& lambda) const; // F^lambda
    // Smallest stored jump strictly greater than lambda, if any.
    std::optional<Rational> next_jump(const Rational& lambda) const;

    bool operator==(const FieldFiltration&) const = default;

  private:
    int ambient_dim_;
    std::vector<std::pair<Rational, Subspace>> jumps_;
    Subspace zero_;
};

struct OrdValue {
    bool infinite = false;
    Rational value = 0;
    bool operator==(const OrdValue&) const = default;
};

// ord_F(s) = max { lambda | s in F^lambda V }; +infinity exactly for s=0.
OrdValue ord_filtration(const FieldFiltration& f, const QVec& s);

struct QVecLess {
    bool operator()(const QVec& a, const QVec& b) const {
        for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
            if (a[i] < b[i]) return true;
            if (b[i] < a[i]) return false;
        }
        return a.size() < b.size();
    }
};

struct GradedPiece {
    int dim = 0;
    QMatrix representatives; // lifts of a basis of gr^lambda, one per dim
};

// gr_{F_1..F_r}(V) as a finite table: multi-index -> (dim, representatives).
struct GradedTable {
    int ambient_dim = 0;
    std::map<QVec, GradedPiece, QVecLess> entries;
    int total() const {
        int t = 0;
        for (const auto& [k, p] : entries) t += p.dim;
        return t;
    }
};

// F^lambda V = F_1^{lambda_1} V ∩ ... ∩ F_r^{lambda_r} V.
Subspace multi_intersection(const std::vector<FieldFiltration>& fs, const QVec& lambda);

// Candidate multi-indices run over the product grid of per-filtration jump
// values; gr vanishes off that grid because each F_i only changes at its
// jumps, so any off-grid index has F^{>lambda} = F^lambda.
GradedTable graded_table(const std::vector<FieldFiltration>& fs);

struct FieldDiagBasis {
    QMatrix vectors;
    std::vector<QVec> ord_vectors; // per vector, (ord_{F_1},...,ord_{F_r})
};

struct FieldDiagResult {
    bool success = false;
    FieldDiagBasis basis;
    GradedTable obstruction; // populated on failure (and on success, the table)
};

// Simultaneous diagonalization via the dimension criterion: succeeds iff
// dim gr = dim V, in which case the stored representatives already form a
// diagonalizing basis. The seed only permutes representative order.
FieldDiagResult diagonalize_field(const std::vector<FieldFiltration>& fs,
                                  std::uint64_t seed = 0);

// True iff at every jump of every F_i the span identity
// F^lambda = span(s_i | ord(s_i) >= lambda) holds.
bool verify_diagonalizes(const QMatrix& basis, const std::vector<FieldFiltration>& fs);

// Multiset (sorted) of ord-vectors of a diagonalizing basis.
std::vector<QVec> jump_multiset(const QMatrix& basis, const std::vector<FieldFiltration>& fs);

} // namespace reesdiag
