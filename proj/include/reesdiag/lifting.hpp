#pragma once

#include "reesdiag/dvr_filtration.hpp"

#include <functional>

namespace reesdiag {

// Basis of V/t^i V together with its ord data; `level` is i.
using ModBasis = DvrDiagBasis;

// Square matrices over truncated series, stored row-major; columns act on
// coordinate columns, so basis_matrix(vectors) has the vectors as columns.
using SMatrix = std::vector<std::vector<TruncatedSeries>>;

SMatrix basis_matrix(const std::vector<SVec>& vectors, long precision);
std::vector<SVec> matrix_columns(const SMatrix& m);
SMatrix smatrix_mul(const SMatrix& a, const SMatrix& b);
// Inverse over R/t^precision; requires a unit determinant. Unit-pivot
// elimination only, hence exact.
SMatrix smatrix_inverse(const SMatrix& m);
SMatrix smatrix_truncated(const SMatrix& m, long level);

// Diagonalizing basis of (F_alpha V / t^i V)_alpha: runs the graded-table
// machinery on the image filtrations at precision i.
ModBasis diagonalize_mod(const std::vector<DvrFiltration>& fs, long i, std::uint64_t seed = 0);

// c_{ab} = max(0, max_alpha ceil(m_{alpha,b} - m_{alpha,a})): the exact
// divisibility on g_{ab} so that a basis change fixes every diagonal
// filtration. orders[k][alpha] = ord_{F_alpha}(s_k).
std::vector<std::vector<long>> constraint_matrix(const std::vector<QVec>& orders);

// One step of the torsor lift: solves b_i = g · (c_next mod t^i), checks g
// against the divisibility constraints (NotInTorsor on failure), lifts g
// coefficient-wise and returns g · c_next, which reduces to b_i and
// diagonalizes at level i+1 (re-verified against fs).
ModBasis torsor_transfer(const std::vector<DvrFiltration>& fs, const ModBasis& b_level,
                         const ModBasis& c_next, const std::vector<std::vector<long>>& constraints);

// Compatible-system construction: stitches independently produced
// per-level bases into one basis at level n whose truncation at every
// level i <= n diagonalizes all filtrations mod t^i.
ModBasis lift_chain(const std::vector<DvrFiltration>& fs,
                    const std::function<ModBasis(long)>& oracle, long n);

} // namespace reesdiag
