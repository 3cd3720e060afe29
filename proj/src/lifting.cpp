#include "reesdiag/lifting.hpp"

#include "reesdiag/errors.hpp"

#include <algorithm>

namespace reesdiag {

SMatrix basis_matrix(const std::vector<SVec>& vectors, long precision) {
    size_t n = vectors.size();
    SMatrix m(n, std::vector<TruncatedSeries>(n, TruncatedSeries::zero(precision)));
    for (size_t col = 0; col < n; ++col) {
        if (vectors[col].size() != n) fail(ErrorKind::DimensionMismatch, "non-square basis");
        for (size_t row = 0; row < n; ++row) m[row][col] = vectors[col][row].truncated(precision);
    }
    return m;
}

std::vector<SVec> matrix_columns(const SMatrix& m) {
    size_t n = m.size();
    std::vector<SVec> cols(n);
    for (size_t col = 0; col < n; ++col) {
        SVec v;
        v.reserve(n);
        for (size_t row = 0; row < n; ++row) v.push_back(m[row][col]);
        cols[col] = std::move(v);
    }
    return cols;
}

SMatrix smatrix_mul(const SMatrix& a, const SMatrix& b) {
    size_t n = a.size();
    long prec = a[0][0].precision();
    SMatrix c(n, std::vector<TruncatedSeries>(n, TruncatedSeries::zero(prec)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            TruncatedSeries acc = TruncatedSeries::zero(prec);
            for (size_t k = 0; k < n; ++k) acc = acc + a[i][k] * b[k][j];
            c[i][j] = acc;
        }
    return c;
}

SMatrix smatrix_inverse(const SMatrix& m) {
    size_t n = m.size();
    long prec = m[0][0].precision();
    SMatrix a = m;
    SMatrix inv(n, std::vector<TruncatedSeries>(n, TruncatedSeries::zero(prec)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = TruncatedSeries::one(prec);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t row = col; row < n; ++row) {
            if (a[row][col].coeff(0) != 0) {
                piv = row;
                break;
            }
        }
        if (piv == n)
            fail(ErrorKind::InvariantViolation, "matrix not invertible over the truncated ring");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        TruncatedSeries u = a[col][col].inverse();
        for (size_t j = 0; j < n; ++j) {
            a[col][j] = a[col][j] * u;
            inv[col][j] = inv[col][j] * u;
        }
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            TruncatedSeries f = a[row][col];
            for (size_t j = 0; j < n; ++j) {
                a[row][j] = a[row][j] - f * a[col][j];
                inv[row][j] = inv[row][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

SMatrix smatrix_truncated(const SMatrix& m, long level) {
    SMatrix out = m;
    for (auto& row : out)
        for (auto& e : row) e = e.truncated(level);
    return out;
}

ModBasis diagonalize_mod(const std::vector<DvrFiltration>& fs, long i, std::uint64_t seed) {
    for (const auto& f : fs)
        if (i > f.precision())
            fail(ErrorKind::PrecisionExhausted, "level exceeds filtration precision");
    std::vector<DvrFiltration> reduced;
    reduced.reserve(fs.size());
    for (const auto& f : fs) reduced.push_back(f.reduced_mod(i));
    DvrDiagResult r = diagonalize_dvr(reduced, seed);
    if (!r.success)
        fail(ErrorKind::NotDiagonalizableMod,
             "no simultaneous diagonalization at level " + std::to_string(i) + ": gr total " +
                 std::to_string(r.table.total()) + " != rank " +
                 std::to_string(r.table.ambient_rank));
    r.basis.level = i;
    return r.basis;
}

std::vector<std::vector<long>> constraint_matrix(const std::vector<QVec>& orders) {
    size_t n = orders.size();
    std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            long best = 0;
            for (size_t alpha = 0; alpha < orders[a].size(); ++alpha)
                best = std::max(best, rational_ceil(orders[b][alpha] - orders[a][alpha]));
            c[a][b] = best;
        }
    return c;
}

ModBasis torsor_transfer(const std::vector<DvrFiltration>& fs, const ModBasis& b_level,
                         const ModBasis& c_next,
                         const std::vector<std::vector<long>>& constraints) {
    long i = b_level.level;
    long next = c_next.level;
    if (next != i + 1) fail(ErrorKind::InvariantViolation, "levels must be consecutive");
    size_t n = b_level.vectors.size();
    if (c_next.vectors.size() != n) fail(ErrorKind::DimensionMismatch, "basis sizes differ");

    SMatrix b = basis_matrix(b_level.vectors, i);
    SMatrix cbar = smatrix_truncated(basis_matrix(c_next.vectors, next), i);
    // frame matrix of g in the c-frame: b = cbar · g
    SMatrix g = smatrix_mul(smatrix_inverse(cbar), b);

    for (size_t a = 0; a < n; ++a)
        for (size_t bcol = 0; bcol < n; ++bcol) {
            long need = std::min(constraints[a][bcol], i);
            ExtOrd o = g[a][bcol].ord();
            long have = o.finite ? o.value : o.value /* == precision i */;
            if (have < need)
                fail(ErrorKind::NotInTorsor,
                     "transfer matrix entry (" + std::to_string(a) + "," + std::to_string(bcol) +
                         ") has order " + std::to_string(have) + " < required " +
                         std::to_string(need) +
                         "; the inputs do not diagonalize the same filtrations");
        }

    // Naive coefficient lift: reading the same polynomials mod t^{i+1}
    // keeps every known coefficient and sets the t^i one to zero, so the
    // divisibility constraints lift for free.
    SMatrix glift(n, std::vector<TruncatedSeries>(n, TruncatedSeries::zero(next)));
    for (size_t r = 0; r < n; ++r)
        for (size_t cidx = 0; cidx < n; ++cidx) {
            TruncatedSeries e(next);
            for (const auto& [k, coef] : g[r][cidx].coeffs()) e.set_coeff(k, coef);
            glift[r][cidx] = e;
        }

    SMatrix result = smatrix_mul(basis_matrix(c_next.vectors, next), glift);
    ModBasis out;
    out.level = next;
    out.vectors = matrix_columns(result);
    out.ord_vectors = c_next.ord_vectors;

    std::vector<DvrFiltration> reduced;
    for (const auto& f : fs) reduced.push_back(f.reduced_mod(next));
    if (!verify_diagonalizes_dvr(out.vectors, out.ord_vectors, reduced))
        fail(ErrorKind::NotInTorsor, "lifted basis fails the span identities at level " +
                                         std::to_string(next));
    // sanity: the lift reduces to the level-i input
    for (size_t k = 0; k < n; ++k)
        for (size_t r = 0; r < n; ++r)
            if (!(out.vectors[k][r].truncated(i) == b_level.vectors[k][r].truncated(i)))
                fail(ErrorKind::Internal, "lift does not reduce to its level-i input");
    return out;
}

namespace {

// Permute c's positions so its reduction matches b's ord profile at b's
// level; ties broken by c's own (finer) ords, then by index.
ModBasis align_to(const ModBasis& b_level, const ModBasis& c_next,
                  const std::vector<DvrFiltration>& fs) {
    long i = b_level.level;
    std::vector<DvrFiltration> reduced;
    for (const auto& f : fs) reduced.push_back(f.reduced_mod(i));
    size_t n = c_next.vectors.size();
    std::vector<QVec> red_ords(n);
    for (size_t k = 0; k < n; ++k) {
        SVec v;
        for (const auto& e : c_next.vectors[k]) v.push_back(e.truncated(i));
        QVec ords;
        for (const auto& f : reduced) {
            OrdValue o = ord_dvr(f, v);
            if (o.infinite) fail(ErrorKind::NotInTorsor, "basis vector vanishes at lower level");
            ords.push_back(o.value);
        }
        red_ords[k] = std::move(ords);
    }
    std::vector<bool> used(n, false);
    std::vector<size_t> perm(n, 0);
    QVecLess less;
    for (size_t bk = 0; bk < n; ++bk) {
        const QVec& want = b_level.ord_vectors[bk];
        size_t chosen = n;
        for (size_t ck = 0; ck < n; ++ck) {
            if (used[ck] || red_ords[ck] != want) continue;
            if (chosen == n || less(c_next.ord_vectors[ck], c_next.ord_vectors[chosen]))
                chosen = ck;
        }
        if (chosen == n)
            fail(ErrorKind::NotInTorsor,
                 "levelwise ord profiles do not match; inputs diagonalize different filtrations");
        used[chosen] = true;
        perm[bk] = chosen;
    }
    ModBasis out;
    out.level = c_next.level;
    for (size_t bk = 0; bk < n; ++bk) {
        out.vectors.push_back(c_next.vectors[perm[bk]]);
        out.ord_vectors.push_back(c_next.ord_vectors[perm[bk]]);
    }
    return out;
}

} // namespace

ModBasis lift_chain(const std::vector<DvrFiltration>& fs,
                    const std::function<ModBasis(long)>& oracle, long n) {
    if (n <= 0) fail(ErrorKind::InvariantViolation, "target level must be positive");
    ModBasis b = oracle(1);
    if (b.level != 1) fail(ErrorKind::InvariantViolation, "oracle returned wrong level");
    for (long i = 1; i < n; ++i) {
        ModBasis c = oracle(i + 1);
        if (c.level != i + 1) fail(ErrorKind::InvariantViolation, "oracle returned wrong level");
        ModBasis aligned = align_to(b, c, fs);
        auto constraints = constraint_matrix(aligned.ord_vectors);
        b = torsor_transfer(fs, b, aligned, constraints);
    }
    return b;
}

} // namespace reesdiag
