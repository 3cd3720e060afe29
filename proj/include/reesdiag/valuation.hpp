#pragma once

#include "reesdiag/dvr_filtration.hpp"
#include "reesdiag/laurent.hpp"

#include <string>
#include <vector>

namespace reesdiag {

// Monomial valuation on Laurent data: v(sum c_{k,b} t^k x^b) =
// min { k + <weights, b> } over stored terms, with v(t) = 1 baked in.
// Stored valuations are always normalized so v(t) = 1; divisor
// multiplicities are kept on DivisorData purely for reporting.
struct MonomialValuation {
    QVec weights;

    bool operator==(const MonomialValuation&) const = default;
};

// AbovePrecision (infinite=true) only when f vanishes mod t^N.
OrdValue eval_valuation(const MonomialValuation& v, const LaurentPoly& f);

// Vertex data of a dual complex: weight vector of the divisorial
// valuation ord_E, multiplicity b_E of the special fiber along E, and the
// log discrepancy of ord_E.
struct DivisorData {
    std::string label;
    QVec weights;
    long b = 1;
    Rational log_discrepancy = 0;

    bool operator==(const DivisorData&) const = default;
};

// Designated free-module basis of a space of sections.
class SectionSpace {
  public:
    SectionSpace() : num_vars_(0), precision_(1) {}
    // Checks exact linear independence over Q(t) (hence over the truncated
    // ring for polynomial data); throws NotABasis otherwise.
    static SectionSpace create(std::vector<LaurentPoly> sections, int num_vars, long precision);

    const std::vector<LaurentPoly>& sections() const { return sections_; }
    int rank() const { return static_cast<int>(sections_.size()); }
    int num_vars() const { return num_vars_; }
    long precision() const { return precision_; }

  private:
    std::vector<LaurentPoly> sections_;
    int num_vars_;
    long precision_;
};

bool sections_independent(const std::vector<LaurentPoly>& sections, int num_vars,
                          long precision);

// Filtration F^lambda = { s in V_R : v(s) >= lambda } on the coordinate
// module R^rank of the section space. The output satisfies all five
// filtration axioms; PrecisionExhausted if the bounded regime is not
// reachable within the ring precision.
DvrFiltration induced_filtration(const MonomialValuation& v, const SectionSpace& space);

// A_{X,B} restricted to a cone: sum alpha_j * A_j (linear on cones).
Rational log_discrepancy_on_cone(const std::vector<DivisorData>& divisors, const QVec& alpha);

// v lies in the skeleton iff the log discrepancy vanishes and
// sum alpha_j b_j = 1 (the v(pi)=1 normalization).
bool skeleton_membership(const std::vector<DivisorData>& divisors, const QVec& alpha);

// Vertical metric shift: a Cartier divisor D = sum D_j E_j shifts the
// value of the valuation at cone coordinates alpha' (sum alpha'_j b_j = 1)
// by sum alpha'_j D_j. `alpha` here is barycentric (sums to 1); the
// normalized coordinates are alpha_j / (sum alpha_k b_k) / ... scaled by
// 1/b_j at the vertices.
Rational metric_shift_value(const std::vector<DivisorData>& divisors, const QVec& alpha,
                            const std::vector<long>& d_coeffs);

// Applies the shift to a map of per-valuation ord values.
std::vector<Rational> metric_shift(const std::vector<Rational>& values,
                                   const std::vector<Rational>& shifts);

} // namespace reesdiag
