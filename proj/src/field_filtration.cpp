#include "reesdiag/field_filtration.hpp"

#include "reesdiag/errors.hpp"

#include <algorithm>
#include <numeric>

namespace reesdiag {

FieldFiltration FieldFiltration::from_jumps(int ambient_dim,
                                            std::vector<std::pair<Rational, Subspace>> jumps) {
    FieldFiltration f;
    f.ambient_dim_ = ambient_dim;
    f.zero_ = Subspace::zero(ambient_dim);
    if (jumps.empty()) fail(ErrorKind::InvariantViolation, "filtration needs at least one jump");
    std::sort(jumps.begin(), jumps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!(jumps.front().second == Subspace::full(ambient_dim)))
        fail(ErrorKind::InvariantViolation, "first stored jump must carry the full space");
    for (size_t i = 0; i < jumps.size(); ++i) {
        if (jumps[i].second.ambient_dim() != ambient_dim)
            fail(ErrorKind::DimensionMismatch, "jump subspace in wrong ambient space");
        if (i > 0) {
            if (jumps[i].first == jumps[i - 1].first)
                fail(ErrorKind::InvariantViolation, "duplicate jump value");
            if (!(jumps[i - 1].second.contains(jumps[i].second)) ||
                jumps[i].second == jumps[i - 1].second)
                fail(ErrorKind::InvariantViolation, "jump subspaces must strictly decrease");
        }
    }
    f.jumps_ = std::move(jumps);
    return f;
}

FieldFiltration FieldFiltration::from_steps(int ambient_dim,
                                            std::vector<std::pair<Rational, Subspace>> steps) {
    std::vector<std::pair<Rational, Subspace>> jumps;
    jumps.emplace_back(Rational(0), Subspace::full(ambient_dim));
    for (auto& s : steps) jumps.push_back(std::move(s));
    return from_jumps(ambient_dim, std::move(jumps));
}

const Subspace& FieldFiltration::value(const Rational& lambda) const {
    for (const auto& [l, w] : jumps_)
        if (l >= lambda) return w;
    return zero_;
}

std::optional<Rational> FieldFiltration::next_jump(const Rational& lambda) const {
    for (const auto& [l, w] : jumps_)
        if (l > lambda) return l;
    return std::nullopt;
}

OrdValue ord_filtration(const FieldFiltration& f, const QVec& s) {
    if (static_cast<int>(s.size()) != f.ambient_dim())
        fail(ErrorKind::DimensionMismatch, "ord_filtration: vector has wrong dimension");
    if (is_zero_vec(s)) return OrdValue{true, 0};
    OrdValue best{false, f.jumps().front().first};
    for (const auto& [l, w] : f.jumps())
        if (w.contains(s)) best = OrdValue{false, l};
    return best;
}

Subspace multi_intersection(const std::vector<FieldFiltration>& fs, const QVec& lambda) {
    if (fs.empty()) fail(ErrorKind::InvariantViolation, "no filtrations given");
    if (lambda.size() != fs.size())
        fail(ErrorKind::DimensionMismatch, "multi-index length != number of filtrations");
    int n = fs[0].ambient_dim();
    for (const auto& f : fs)
        if (f.ambient_dim() != n)
            fail(ErrorKind::DimensionMismatch, "filtrations on different ambient spaces");
    Subspace acc = fs[0].value(lambda[0]);
    for (size_t i = 1; i < fs.size(); ++i) acc = intersect(acc, fs[i].value(lambda[i]));
    return acc;
}

GradedTable graded_table(const std::vector<FieldFiltration>& fs) {
    if (fs.empty()) fail(ErrorKind::InvariantViolation, "no filtrations given");
    int n = fs[0].ambient_dim();
    for (const auto& f : fs)
        if (f.ambient_dim() != n)
            fail(ErrorKind::DimensionMismatch, "filtrations on different ambient spaces");
    GradedTable table;
    table.ambient_dim = n;

    // All grid points: product of per-filtration jump sets.
    std::vector<std::vector<Rational>> axes;
    for (const auto& f : fs) {
        std::vector<Rational> vals;
        for (const auto& [l, w] : f.jumps()) vals.push_back(l);
        axes.push_back(std::move(vals));
    }
    QVec lambda(fs.size(), Rational(0));
    std::vector<size_t> idx(fs.size(), 0);
    while (true) {
        for (size_t i = 0; i < fs.size(); ++i) lambda[i] = axes[i][idx[i]];
        Subspace f_at = multi_intersection(fs, lambda);
        if (f_at.dim() > 0) {
            // F^{>lambda} = sum of the r grid-successor intersections.
            Subspace above = Subspace::zero(n);
            for (size_t j = 0; j < fs.size(); ++j) {
                QVec mu = lambda;
                auto nj = fs[j].next_jump(lambda[j]);
                if (nj) {
                    mu[j] = *nj;
                    above = above + multi_intersection(fs, mu);
                }
                // no next jump: that direction contributes the zero space
            }
            int d = f_at.dim() - above.dim();
            if (d > 0) {
                GradedPiece piece;
                piece.dim = d;
                piece.representatives = above.extend_to(f_at);
                table.entries.emplace(lambda, std::move(piece));
            }
        }
        size_t k = 0;
        while (k < fs.size() && ++idx[k] == axes[k].size()) idx[k++] = 0;
        if (k == fs.size()) break;
    }
    return table;
}

FieldDiagResult diagonalize_field(const std::vector<FieldFiltration>& fs, std::uint64_t seed) {
    FieldDiagResult res;
    GradedTable table = graded_table(fs);
    res.obstruction = table;
    int n = table.ambient_dim;
    if (table.total() != n) {
        res.success = false;
        return res;
    }
    std::vector<std::pair<QVec, QMatrix>> pieces;
    for (const auto& [lambda, piece] : table.entries) pieces.emplace_back(lambda, piece.representatives);
    if (seed != 0) {
        SplitMix64 rng(seed);
        for (size_t i = pieces.size(); i > 1; --i)
            std::swap(pieces[i - 1], pieces[rng.below(i)]);
        for (auto& [lambda, reps] : pieces)
            for (size_t i = reps.size(); i > 1; --i)
                std::swap(reps[i - 1], reps[rng.below(i)]);
    }
    for (const auto& [lambda, reps] : pieces)
        for (const auto& row : reps) {
            res.basis.vectors.push_back(row);
            res.basis.ord_vectors.push_back(lambda);
        }
    if (!verify_diagonalizes(res.basis.vectors, fs))
        fail(ErrorKind::Internal, "dimension criterion met but span identities failed");
    res.success = true;
    return res;
}

bool verify_diagonalizes(const QMatrix& basis, const std::vector<FieldFiltration>& fs) {
    if (fs.empty()) fail(ErrorKind::InvariantViolation, "no filtrations given");
    int n = fs[0].ambient_dim();
    if (static_cast<int>(basis.size()) != n || rank(basis) != n)
        fail(ErrorKind::NotABasis, "candidate set does not span the ambient space");
    for (const auto& f : fs) {
        std::vector<OrdValue> ords;
        ords.reserve(basis.size());
        for (const auto& b : basis) ords.push_back(ord_filtration(f, b));
        for (const auto& [l, w] : f.jumps()) {
            QMatrix gens;
            for (size_t i = 0; i < basis.size(); ++i)
                if (ords[i].infinite || ords[i].value >= l) gens.push_back(basis[i]);
            if (!(Subspace::span(n, std::move(gens)) == w)) return false;
        }
    }
    return true;
}

std::vector<QVec> jump_multiset(const QMatrix& basis, const std::vector<FieldFiltration>& fs) {
    if (!verify_diagonalizes(basis, fs))
        fail(ErrorKind::NotDiagonalizing, "basis does not diagonalize the filtrations");
    std::vector<QVec> out;
    for (const auto& b : basis) {
        QVec ord;
        for (const auto& f : fs) {
            OrdValue o = ord_filtration(f, b);
            // basis vectors are nonzero, so ord is finite
            ord.push_back(o.value);
        }
        out.push_back(std::move(ord));
    }
    std::sort(out.begin(), out.end(), QVecLess{});
    return out;
}

} // namespace reesdiag
