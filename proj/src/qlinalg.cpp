#include "reesdiag/qlinalg.hpp"

#include "reesdiag/errors.hpp"

#include <algorithm>

namespace reesdiag {

std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t ncols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < m.size(); ++col) {
        size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        Rational inv = 1 / m[row][col];
        for (size_t j = col; j < ncols; ++j) m[row][j] *= inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (size_t j = col; j < ncols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    m.resize(row);
    return pivots;
}

QMatrix rref_copy(const QMatrix& m) {
    QMatrix c = m;
    rref(c);
    return c;
}

int rank(const QMatrix& m) {
    QMatrix c = m;
    return static_cast<int>(rref(c).size());
}

QVec reduce_against(const QMatrix& echelon, const std::vector<int>& pivots, QVec v) {
    for (size_t i = 0; i < echelon.size(); ++i) {
        int p = pivots[i];
        if (v[static_cast<size_t>(p)] == 0) continue;
        Rational f = v[static_cast<size_t>(p)];
        for (size_t j = static_cast<size_t>(p); j < v.size(); ++j) v[j] -= f * echelon[i][j];
    }
    return v;
}

bool in_row_space(const QMatrix& echelon, const std::vector<int>& pivots, const QVec& v) {
    return is_zero_vec(reduce_against(echelon, pivots, v));
}

QMatrix kernel(const QMatrix& m, int ncols) {
    QMatrix e = m;
    std::vector<int> pivots = rref(e);
    std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    QMatrix basis;
    for (int free = 0; free < ncols; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        QVec v(static_cast<size_t>(ncols), Rational(0));
        v[static_cast<size_t>(free)] = 1;
        for (size_t i = 0; i < e.size(); ++i)
            v[static_cast<size_t>(pivots[i])] = -e[i][static_cast<size_t>(free)];
        basis.push_back(std::move(v));
    }
    rref(basis);
    return basis;
}

QVec matvec(const QMatrix& m, const QVec& v) {
    QVec out(m.size(), Rational(0));
    for (size_t i = 0; i < m.size(); ++i) {
        Rational acc(0);
        for (size_t j = 0; j < v.size(); ++j) acc += m[i][j] * v[j];
        out[i] = acc;
    }
    return out;
}

bool solve_in_span(const QMatrix& rows, const QVec& target, QVec* coeffs) {
    // Augment each row with an identity tail to track combinations.
    if (rows.empty()) {
        if (!is_zero_vec(target)) return false;
        if (coeffs) coeffs->clear();
        return true;
    }
    size_t n = rows[0].size();
    size_t k = rows.size();
    QMatrix aug(k, QVec(n + k, Rational(0)));
    for (size_t i = 0; i < k; ++i) {
        std::copy(rows[i].begin(), rows[i].end(), aug[i].begin());
        aug[i][n + i] = 1;
    }
    // Eliminate only on the first n columns.
    size_t row = 0;
    std::vector<int> pivots;
    for (size_t col = 0; col < n && row < k; ++col) {
        size_t sel = row;
        while (sel < k && aug[sel][col] == 0) ++sel;
        if (sel == k) continue;
        std::swap(aug[row], aug[sel]);
        Rational inv = 1 / aug[row][col];
        for (size_t j = 0; j < n + k; ++j) aug[row][j] *= inv;
        for (size_t i = 0; i < k; ++i) {
            if (i == row || aug[i][col] == 0) continue;
            Rational f = aug[i][col];
            for (size_t j = 0; j < n + k; ++j) aug[i][j] -= f * aug[row][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    QVec v = target;
    QVec combo(k, Rational(0));
    for (size_t i = 0; i < pivots.size(); ++i) {
        int p = pivots[i];
        if (v[static_cast<size_t>(p)] == 0) continue;
        Rational f = v[static_cast<size_t>(p)];
        for (size_t j = 0; j < n; ++j) v[j] -= f * aug[i][j];
        for (size_t j = 0; j < k; ++j) combo[j] += f * aug[i][n + j];
    }
    if (!is_zero_vec(v)) return false;
    if (coeffs) *coeffs = std::move(combo);
    return true;
}

} // namespace reesdiag
