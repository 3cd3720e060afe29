#pragma once

#include "reesdiag/rational.hpp"

#include <vector>

namespace reesdiag {

// Dense exact row-major matrix utilities over Q. Everything here returns
// fresh values; reduced row echelon form (RREF) is the canonical shape
// used for subspace equality throughout.
using QMatrix = std::vector<QVec>;

// In-place RREF; returns pivot column indices (one per surviving row).
// Zero rows are removed.
std::vector<int> rref(QMatrix& m);

QMatrix rref_copy(const QMatrix& m);

int rank(const QMatrix& m);

// Reduces v against an RREF matrix with the given pivot columns; the
// remainder has zeros in all pivot columns.
QVec reduce_against(const QMatrix& echelon, const std::vector<int>& pivots, QVec v);

bool in_row_space(const QMatrix& echelon, const std::vector<int>& pivots, const QVec& v);

// Nullspace of the linear map given by the rows (as linear functionals);
// result rows form an RREF basis of {x : m x = 0}.
QMatrix kernel(const QMatrix& m, int ncols);

QVec matvec(const QMatrix& m, const QVec& v);

// Solves x * m_rows = target as a row-combination problem, i.e. finds
// coefficients over the rows; empty optional if unsolvable.
bool solve_in_span(const QMatrix& rows, const QVec& target, QVec* coeffs);

} // namespace reesdiag
