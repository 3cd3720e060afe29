#include "reesdiag/tropical.hpp"

#include "reesdiag/errors.hpp"

namespace reesdiag {

TropicalFunction tropicalize(const LaurentPoly& s, const SkeletonComplex& k) {
    // only this section's own kinks matter for displaying s^trop
    Subdivision sub = refine(k, {s}, /*integer_shifts=*/false);
    if (!verify_subdivision(k, {s}, sub))
        fail(ErrorKind::Internal, "tropicalization failed its spot re-verification");
    TropicalFunction f;
    for (const auto& cell : sub.cells) {
        TropCell tc;
        tc.simplex_index = cell.simplex_index;
        tc.pieces = cell.pieces;
        tc.form = cell.section_form[0];
        f.cells.push_back(std::move(tc));
    }
    return f;
}

namespace {

// Solves p = v_0 + sum u_i (v_i - v_0) with u_i >= 0, sum u <= 1.
std::optional<QVec> barycentric_in(const QMatrix& piece, const QVec& u) {
    size_t dim = u.size();
    QMatrix rows;
    for (size_t i = 1; i < piece.size(); ++i) {
        QVec d(dim);
        for (size_t c = 0; c < dim; ++c) d[c] = piece[i][c] - piece[0][c];
        rows.push_back(std::move(d));
    }
    QVec target(dim);
    for (size_t c = 0; c < dim; ++c) target[c] = u[c] - piece[0][c];
    QVec coeffs;
    if (!solve_in_span(rows, target, &coeffs)) return std::nullopt;
    Rational total(0);
    for (const auto& c : coeffs) {
        if (c < 0) return std::nullopt;
        total += c;
    }
    if (total > 1) return std::nullopt;
    return coeffs;
}

} // namespace

Rational trop_eval(const TropicalFunction& f, const SkeletonComplex& k, const SkeletonPoint& p) {
    // locate the simplex chart containing the point and a piece inside it
    const auto& maximal = k.maximal_simplices();
    std::vector<int> sorted = p.simplex;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& cell : f.cells) {
        const auto& simp = maximal[static_cast<size_t>(cell.simplex_index)];
        // p must name a face of this simplex; embed its barycentrics
        if (!std::includes(simp.begin(), simp.end(), sorted.begin(), sorted.end())) continue;
        QVec bary_full(simp.size(), Rational(0));
        for (size_t i = 0; i < p.simplex.size(); ++i) {
            auto it = std::find(simp.begin(), simp.end(), p.simplex[i]);
            bary_full[static_cast<size_t>(it - simp.begin())] = p.bary[i];
        }
        // chart coordinates of the point: u solves alpha'(u) = bary/mass
        Rational mass(0);
        for (size_t j = 0; j < simp.size(); ++j)
            mass += bary_full[j] * k.vertices()[static_cast<size_t>(simp[j])].b;
        QVec alpha(simp.size());
        for (size_t j = 0; j < simp.size(); ++j) alpha[j] = bary_full[j] / mass;
        // vertices of the chart in alpha coordinates
        QMatrix rows;
        QVec p0(simp.size(), Rational(0));
        p0[0] = Rational(1, k.vertices()[static_cast<size_t>(simp[0])].b);
        p0[0].canonicalize();
        for (size_t i = 1; i < simp.size(); ++i) {
            QVec d(simp.size(), Rational(0));
            d[i] = Rational(1, k.vertices()[static_cast<size_t>(simp[i])].b);
            d[i].canonicalize();
            for (size_t c = 0; c < simp.size(); ++c) d[c] -= p0[c];
            rows.push_back(std::move(d));
        }
        QVec target(simp.size());
        for (size_t c = 0; c < simp.size(); ++c) target[c] = alpha[c] - p0[c];
        QVec u;
        if (!solve_in_span(rows, target, &u)) continue;
        for (const auto& piece : cell.pieces)
            if (barycentric_in(piece, u)) return cell.form.eval(u);
    }
    fail(ErrorKind::NotASimplex, "point not covered by the tropical function's cells");
}

std::optional<long> trop_shift_difference(const LaurentPoly& s1, const LaurentPoly& s2,
                                          const SkeletonComplex& k) {
    Subdivision sub = refine(k, {s1, s2}, /*integer_shifts=*/false);
    std::optional<Rational> shift;
    for (const auto& cell : sub.cells) {
        const AffineForm& f1 = cell.section_form[0];
        const AffineForm& f2 = cell.section_form[1];
        for (const auto& piece : cell.pieces)
            for (const auto& u : piece) {
                Rational d = f1.eval(u) - f2.eval(u);
                if (!shift) shift = d;
                if (*shift != d) return std::nullopt;
            }
    }
    if (!shift) return std::nullopt;
    if (shift->get_den() != 1) return std::nullopt;
    return shift->get_num().get_si();
}

} // namespace reesdiag
