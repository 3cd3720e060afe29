#pragma once

#include "reesdiag/field_filtration.hpp"
#include "reesdiag/submodule.hpp"

#include <map>
#include <optional>
#include <vector>

namespace reesdiag {

// Bounded (1/d)Z-filtration of V = R^n, R = Q[[t]]/t^N. Stored jumps cover
// the grid window [bot, top] with step 1/d where bot is the largest grid
// value carrying the full module and top the smallest with F^top ⊆ tV.
// Outside the window: F^mu = V for mu <= bot, and F^mu = t^k F^{mu-k}
// above (condition (5) forces F^{lambda+1} = t F^lambda once F ⊆ tV).
class DvrFiltration {
  public:
    DvrFiltration() : n_(0), den_(1), precision_(1) {}

    // jumps: contiguous (1/d)-grid values, first carrying the full module,
    // last satisfying F ⊆ tV. `validate` additionally machine-checks
    // condition (5) at every stored jump; fixtures that deliberately break
    // (5) construct with validate=false.
    static DvrFiltration from_jumps(int n, long d,
                                    std::vector<std::pair<Rational, Submodule>> jumps,
                                    long precision, bool validate = true);

    // Diagonal filtration: F^lambda = ⊕ t^{max(0, ceil(lambda - ord_i))} R e_i.
    static DvrFiltration diagonal(const QVec& ords, long d, long precision);

    // Same data conjugated by a basis change with unit determinant: the
    // filtration diagonalized by the given basis vectors with given ords.
    static DvrFiltration diagonal_in_basis(const std::vector<SVec>& basis, const QVec& ords,
                                           long d, long precision);

    int ambient_rank() const { return n_; }
    long denominator() const { return den_; }
    long precision() const { return precision_; }
    const std::vector<std::pair<Rational, Submodule>>& jumps() const { return jumps_; }
    Rational bot() const { return jumps_.front().first; }
    Rational top() const { return jumps_.back().first; }

    Submodule value(const Rational& lambda) const; // F^lambda

    // Checks condition (5), F^{lambda+1} ∩ tV = t F^lambda, at every stored
    // jump (and across the window bottom).
    bool check_condition5() const;

    // Image filtration on V/t^i V.
    DvrFiltration reduced_mod(long i) const;

    // G^lambda := F^{lambda - delta} (vertical metric shift by delta).
    DvrFiltration shifted(const Rational& delta) const;

    bool operator==(const DvrFiltration&) const = default;

  private:
    int n_;
    long den_;
    long precision_;
    std::vector<std::pair<Rational, Submodule>> jumps_;
};

// ord_F(s) = max { lambda | s ∈ F^lambda }; infinite iff s ≡ 0 mod t^N.
OrdValue ord_dvr(const DvrFiltration& f, const SVec& s);

struct DvrGradedPiece {
    int dim = 0;
    std::vector<SVec> representatives;
};

struct DvrGradedTable {
    int ambient_rank = 0;
    long denominator = 1;
    std::map<QVec, DvrGradedPiece, QVecLess> entries;
    int total() const {
        int t = 0;
        for (const auto& [k, p] : entries) t += p.dim;
        return t;
    }
};

// gr^lambda = F^lambda / (F^{>lambda} + t F^{lambda-(1,..,1)}) over the
// merged grid; supported inside the box Π_j [bot_j, top_j + 1).
DvrGradedTable dvr_graded_table(const std::vector<DvrFiltration>& fs);

struct DvrDiagBasis {
    std::vector<SVec> vectors;
    std::vector<QVec> ord_vectors;
    long level = 0; // series precision the basis lives at
};

struct DvrDiagResult {
    bool success = false;
    DvrDiagBasis basis;
    DvrGradedTable table; // obstruction certificate on failure
};

// Dimension criterion: total gr dimension equals the rank iff the
// filtrations are simultaneously diagonalizable; representatives of the
// graded pieces then already form a diagonalizing free basis, and the
// direct-sum span identities are re-verified before returning.
DvrDiagResult diagonalize_dvr(const std::vector<DvrFiltration>& fs, std::uint64_t seed = 0);

// F^lambda == ⊕ t^{max(0, ceil(lambda - ord_i))} R s_i at every stored jump.
bool verify_diagonalizes_dvr(const std::vector<SVec>& basis, const std::vector<QVec>& ords,
                             const std::vector<DvrFiltration>& fs);

// True iff the candidate vectors form a free R-basis (unit determinant).
bool is_free_basis(const std::vector<SVec>& vectors, int n);

// Executable rendering of the graded-quotient identity for the d-th Rees
// module: at each sampled integer multi-index lambda it checks that
//   (a) condition (5) holds at the sampled grid slice for each filtration,
//   (b) the coarse successor sum Σ_i F^{(lambda+e_i)/d} agrees with the
//       fine-grid F^{> lambda/d} (this is where the 1/d-grid hypothesis
//       enters the lemma), and
//   (c) dim F^{lambda/d} / (Σ_i F^{(lambda+e_i)/d} + t F^{lambda/d-(1,..,1)})
//       equals the graded-table entry at lambda/d.
bool rees_quotient_check(const std::vector<DvrFiltration>& fs, long d,
                         const std::vector<std::vector<long>>& samples);

} // namespace reesdiag
