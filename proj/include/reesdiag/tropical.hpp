#pragma once

#include "reesdiag/skeleton.hpp"

#include <optional>

namespace reesdiag {

// Piecewise-affine function on the skeleton: per cell of a private
// subdivision, one affine form in the simplex chart. Continuity across
// faces holds by construction (the cells come from one min-of-affine
// function).
struct TropCell {
    int simplex_index = 0;
    std::vector<QMatrix> pieces;
    AffineForm form;
};

struct TropicalFunction {
    std::vector<TropCell> cells;
};

// s^trop(v) = v(s); exact PL representation obtained from the
// single-section refinement of each simplex.
TropicalFunction tropicalize(const LaurentPoly& s, const SkeletonComplex& k);

// Exact evaluation by locating a containing piece.
Rational trop_eval(const TropicalFunction& f, const SkeletonComplex& k, const SkeletonPoint& p);

// f1 == f2 + c for a constant integer c? Decided exactly on the common
// refinement; returns the shift when it exists.
std::optional<long> trop_shift_difference(const LaurentPoly& s1, const LaurentPoly& s2,
                                          const SkeletonComplex& k);

} // namespace reesdiag
