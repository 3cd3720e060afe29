#pragma once

#include "reesdiag/valuation.hpp"

#include <vector>

namespace reesdiag {

// Point of the skeleton: a simplex (vertex indices into the complex) and
// barycentric coordinates (>= 0, summing to 1).
struct SkeletonPoint {
    std::vector<int> simplex;
    QVec bary;

    bool operator==(const SkeletonPoint&) const = default;
};

// Simplicial dual complex: vertices carry divisor data, simplices are
// declared nonempty intersections (closed under taking faces).
class SkeletonComplex {
  public:
    SkeletonComplex() : num_vars_(0), precision_(1) {}
    // Validates: weights of the right length, b >= 1, A >= 0, every vertex
    // used in a simplex satisfies skeleton membership at its own unit
    // point (so A = 0 there), simplex dimension <= 3. Faces are added
    // automatically.
    static SkeletonComplex create(int num_vars, long precision,
                                  std::vector<DivisorData> vertices,
                                  std::vector<std::vector<int>> simplices);

    int num_vars() const { return num_vars_; }
    long precision() const { return precision_; }
    const std::vector<DivisorData>& vertices() const { return vertices_; }
    const std::vector<std::vector<int>>& simplices() const { return simplices_; }
    const std::vector<std::vector<int>>& maximal_simplices() const { return maximal_; }

    bool has_simplex(const std::vector<int>& s) const;
    std::vector<DivisorData> divisors_of(const std::vector<int>& simplex) const;

  private:
    int num_vars_;
    long precision_;
    std::vector<DivisorData> vertices_;
    std::vector<std::vector<int>> simplices_; // sorted index lists, all faces
    std::vector<std::vector<int>> maximal_;
};

// Normalized quasi-monomial valuation at a skeleton point:
// weights = (sum a_j b_j)^{-1} * sum a_j w_j, so v(t) = 1.
MonomialValuation point_valuation(const SkeletonComplex& k, const SkeletonPoint& p);

// Affine form on a simplex chart: value(u) = offset + <slope, u>, where u
// ranges over the standard parameter simplex {u >= 0, sum u <= 1} of
// dimension |J| - 1.
struct AffineForm {
    QVec slope;
    Rational offset;

    bool operator==(const AffineForm& o) const {
        return slope == o.slope && offset == o.offset;
    }
    bool operator<(const AffineForm& o) const {
        if (QVecLess{}(slope, o.slope)) return true;
        if (QVecLess{}(o.slope, slope)) return false;
        return offset < o.offset;
    }
    Rational eval(const QVec& u) const {
        Rational acc = offset;
        for (size_t i = 0; i < slope.size(); ++i) acc += slope[i] * u[i];
        return acc;
    }
};

// One region of the arrangement inside a parent simplex: a convex union
// of simplicial pieces with a constant active form per tracked section.
struct Cell {
    int simplex_index = 0;          // into maximal_simplices()
    std::vector<QMatrix> pieces;    // simplicial pieces, rows = u-vertices
    QMatrix vertices;               // deduplicated u-vertices of the pieces
    std::vector<AffineForm> section_form; // per tracked section
    std::vector<int> sign_vector;   // sign per hyperplane of this simplex
};

struct Subdivision {
    std::vector<Cell> cells;
    // per maximal simplex: the cut hyperplanes (for monotonicity checks)
    std::vector<std::vector<AffineForm>> hyperplanes;
};

// Term forms of a section on a simplex chart, deduplicated.
std::vector<AffineForm> section_forms(const SkeletonComplex& k, int simplex_index,
                                      const LaurentPoly& s);

// Cuts every maximal simplex by the pairwise differences of the sections'
// term forms. With `integer_shifts` also by their integer translates that
// meet the simplex; those are exactly the kink loci of R-linear
// combinations (t-multiples shift a form by v(t) = 1), which the
// certification pipeline needs. Pure k-linear work can pass false.
Subdivision refine(const SkeletonComplex& k, const std::vector<LaurentPoly>& sections,
                   bool integer_shifts = true);

// Deduplicated skeleton points at all cell vertices, ordered by their
// normalized weight vectors.
std::vector<SkeletonPoint> subdivision_vertices(const SkeletonComplex& k, const Subdivision& s);

// u-chart <-> barycentric conversions for a simplex of the complex.
QVec u_to_bary(const SkeletonComplex& k, const std::vector<int>& simplex, const QVec& u);
SkeletonPoint u_point(const SkeletonComplex& k, int simplex_index, const QVec& u);

// Spot re-verification that each cell's recorded forms agree with direct
// valuation evaluation at every piece vertex and at piece barycenters.
bool verify_subdivision(const SkeletonComplex& k, const std::vector<LaurentPoly>& sections,
                        const Subdivision& s);

} // namespace reesdiag
