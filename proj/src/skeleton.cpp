#include "reesdiag/skeleton.hpp"

#include "reesdiag/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace reesdiag {

namespace {

std::vector<QVec> alpha_vertices(const SkeletonComplex& k, const std::vector<int>& simplex) {
    // vertex i of the chart is e_i / b_i in local cone coordinates
    std::vector<QVec> ps;
    for (size_t i = 0; i < simplex.size(); ++i) {
        QVec p(simplex.size(), Rational(0));
        p[i] = Rational(1, k.vertices()[static_cast<size_t>(simplex[i])].b);
        p[i].canonicalize();
        ps.push_back(std::move(p));
    }
    return ps;
}

QVec u_to_alpha(const SkeletonComplex& k, const std::vector<int>& simplex, const QVec& u) {
    auto ps = alpha_vertices(k, simplex);
    QVec a = ps[0];
    for (size_t i = 0; i + 1 < ps.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) a[j] += u[i] * (ps[i + 1][j] - ps[0][j]);
    return a;
}

} // namespace

SkeletonComplex SkeletonComplex::create(int num_vars, long precision,
                                        std::vector<DivisorData> vertices,
                                        std::vector<std::vector<int>> simplices) {
    SkeletonComplex k;
    k.num_vars_ = num_vars;
    k.precision_ = precision;
    for (const auto& v : vertices) {
        if (static_cast<int>(v.weights.size()) != num_vars)
            fail(ErrorKind::InvariantViolation,
                 "divisor '" + v.label + "' has wrong weight vector length");
        if (v.b < 1)
            fail(ErrorKind::InvariantViolation,
                 "divisor '" + v.label + "' has non-positive multiplicity");
        if (v.log_discrepancy < 0)
            fail(ErrorKind::InvariantViolation,
                 "divisor '" + v.label + "' has negative log discrepancy");
    }
    k.vertices_ = std::move(vertices);

    std::set<std::vector<int>> faces;
    for (auto s : simplices) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) fail(ErrorKind::InvariantViolation, "empty simplex");
        if (s.size() > 4)
            fail(ErrorKind::UnsupportedDimension, "simplex dimension capped at 3");
        for (int idx : s)
            if (idx < 0 || idx >= static_cast<int>(k.vertices_.size()))
                fail(ErrorKind::InvariantViolation, "simplex references unknown divisor");
        // all nonempty subsets
        size_t m = s.size();
        for (size_t mask = 1; mask < (1u << m); ++mask) {
            std::vector<int> face;
            for (size_t i = 0; i < m; ++i)
                if (mask & (1u << i)) face.push_back(s[i]);
            faces.insert(face);
        }
    }
    // skeleton membership at each used vertex's unit point
    for (const auto& f : faces) {
        if (f.size() != 1) continue;
        const DivisorData& d = k.vertices_[static_cast<size_t>(f[0])];
        QVec alpha{Rational(1, d.b)};
        alpha[0].canonicalize();
        if (!skeleton_membership({d}, alpha))
            fail(ErrorKind::InvariantViolation,
                 "divisor '" + d.label + "' is not a skeleton vertex (A != 0)");
    }
    k.simplices_.assign(faces.begin(), faces.end());
    for (const auto& s : k.simplices_) {
        bool maximal = true;
        for (const auto& t : k.simplices_) {
            if (t.size() <= s.size()) continue;
            if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                maximal = false;
                break;
            }
        }
        if (maximal) k.maximal_.push_back(s);
    }
    return k;
}

bool SkeletonComplex::has_simplex(const std::vector<int>& s) const {
    std::vector<int> sorted = s;
    std::sort(sorted.begin(), sorted.end());
    return std::binary_search(simplices_.begin(), simplices_.end(), sorted);
}

std::vector<DivisorData> SkeletonComplex::divisors_of(const std::vector<int>& simplex) const {
    std::vector<DivisorData> out;
    for (int idx : simplex) out.push_back(vertices_[static_cast<size_t>(idx)]);
    return out;
}

MonomialValuation point_valuation(const SkeletonComplex& k, const SkeletonPoint& p) {
    if (!k.has_simplex(p.simplex)) fail(ErrorKind::NotASimplex, "point names an unknown simplex");
    if (p.bary.size() != p.simplex.size())
        fail(ErrorKind::DimensionMismatch, "barycentric length != simplex size");
    Rational total(0);
    for (const auto& a : p.bary) {
        if (a < 0) fail(ErrorKind::InvariantViolation, "negative barycentric coordinate");
        total += a;
    }
    if (total != 1) fail(ErrorKind::InvariantViolation, "barycentric coordinates must sum to 1");
    Rational mass(0);
    for (size_t j = 0; j < p.simplex.size(); ++j)
        mass += p.bary[j] * k.vertices()[static_cast<size_t>(p.simplex[j])].b;
    MonomialValuation v;
    v.weights.assign(static_cast<size_t>(k.num_vars()), Rational(0));
    for (size_t j = 0; j < p.simplex.size(); ++j) {
        const DivisorData& d = k.vertices()[static_cast<size_t>(p.simplex[j])];
        Rational coef = p.bary[j] / mass;
        for (size_t i = 0; i < v.weights.size(); ++i) v.weights[i] += coef * d.weights[i];
    }
    return v;
}

QVec u_to_bary(const SkeletonComplex& k, const std::vector<int>& simplex, const QVec& u) {
    QVec alpha = u_to_alpha(k, simplex, u);
    Rational total(0);
    for (const auto& a : alpha) total += a;
    QVec bary = alpha;
    for (auto& b : bary) b /= total;
    return bary;
}

SkeletonPoint u_point(const SkeletonComplex& k, int simplex_index, const QVec& u) {
    const auto& simplex = k.maximal_simplices()[static_cast<size_t>(simplex_index)];
    return SkeletonPoint{simplex, u_to_bary(k, simplex, u)};
}

std::vector<AffineForm> section_forms(const SkeletonComplex& k, int simplex_index,
                                      const LaurentPoly& s) {
    const auto& simplex = k.maximal_simplices()[static_cast<size_t>(simplex_index)];
    auto ps = alpha_vertices(k, simplex);
    std::set<AffineForm> forms;
    for (const auto& [m, c] : s.terms()) {
        // per-vertex pairing <w_j, beta>
        QVec pairing;
        for (int idx : simplex) {
            const DivisorData& d = k.vertices()[static_cast<size_t>(idx)];
            Rational acc(0);
            for (size_t i = 0; i < d.weights.size(); ++i) acc += d.weights[i] * m.exps[i];
            pairing.push_back(acc);
        }
        AffineForm f;
        f.offset = Rational(m.tdeg);
        for (size_t j = 0; j < ps.size(); ++j) f.offset += pairing[j] * ps[0][j];
        for (size_t i = 0; i + 1 < ps.size(); ++i) {
            Rational sl(0);
            for (size_t j = 0; j < ps.size(); ++j) sl += pairing[j] * (ps[i + 1][j] - ps[0][j]);
            f.slope.push_back(sl);
        }
        forms.insert(std::move(f));
    }
    return {forms.begin(), forms.end()};
}

namespace {

QMatrix standard_simplex(size_t dim) {
    QMatrix verts;
    verts.push_back(QVec(dim, Rational(0)));
    for (size_t i = 0; i < dim; ++i) {
        QVec v(dim, Rational(0));
        v[i] = 1;
        verts.push_back(std::move(v));
    }
    return verts;
}

int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Splits a simplex (rows = vertices) along h = 0 into sign-pure simplices.
void split_simplex(const QMatrix& verts, const AffineForm& h, std::vector<QMatrix>& nonneg,
                   std::vector<QMatrix>& nonpos) {
    std::vector<int> signs;
    for (const auto& v : verts) signs.push_back(sign_of(h.eval(v)));
    int pos = -1, neg = -1;
    for (size_t i = 0; i < verts.size() && (pos < 0 || neg < 0); ++i) {
        if (signs[i] > 0 && pos < 0) pos = static_cast<int>(i);
        if (signs[i] < 0 && neg < 0) neg = static_cast<int>(i);
    }
    if (pos < 0 || neg < 0) {
        bool has_pos = std::any_of(signs.begin(), signs.end(), [](int s) { return s > 0; });
        bool has_neg = std::any_of(signs.begin(), signs.end(), [](int s) { return s < 0; });
        if (has_neg)
            nonpos.push_back(verts);
        else if (has_pos)
            nonneg.push_back(verts);
        else
            nonneg.push_back(verts); // h vanishes identically on the piece
        return;
    }
    Rational hi = h.eval(verts[static_cast<size_t>(pos)]);
    Rational hj = h.eval(verts[static_cast<size_t>(neg)]);
    Rational s = hi / (hi - hj);
    QVec x = verts[static_cast<size_t>(pos)];
    for (size_t c = 0; c < x.size(); ++c)
        x[c] += s * (verts[static_cast<size_t>(neg)][c] - verts[static_cast<size_t>(pos)][c]);
    QMatrix a = verts, b = verts;
    a[static_cast<size_t>(neg)] = x; // keeps the positive vertex
    b[static_cast<size_t>(pos)] = x; // keeps the negative vertex
    split_simplex(a, h, nonneg, nonpos);
    split_simplex(b, h, nonneg, nonpos);
}

QVec barycenter(const QMatrix& verts) {
    QVec c(verts[0].size(), Rational(0));
    for (const auto& v : verts)
        for (size_t i = 0; i < c.size(); ++i) c[i] += v[i];
    Rational inv(1, static_cast<long>(verts.size()));
    for (auto& x : c) x *= inv;
    return c;
}

AffineForm normalized(AffineForm f) {
    for (size_t i = 0; i < f.slope.size(); ++i) {
        if (f.slope[i] != 0) {
            Rational inv = 1 / f.slope[i]; // first nonzero slope becomes +1
            for (auto& s : f.slope) s *= inv;
            f.offset *= inv;
            return f;
        }
    }
    if (f.offset != 0) {
        f.slope.assign(f.slope.size(), Rational(0));
        f.offset = 1;
    }
    return f;
}

} // namespace

Subdivision refine(const SkeletonComplex& k, const std::vector<LaurentPoly>& sections,
                   bool integer_shifts) {
    for (const auto& s : sections)
        if (s.is_zero())
            fail(ErrorKind::PrecisionExhausted, "cannot tropicalize a section that is 0 mod t^N");
    Subdivision out;
    const auto& maximal = k.maximal_simplices();
    for (size_t si = 0; si < maximal.size(); ++si) {
        size_t dim = maximal[si].size() - 1;
        std::vector<std::vector<AffineForm>> forms; // per section
        std::set<AffineForm> all_forms;
        for (const auto& s : sections) {
            forms.push_back(section_forms(k, static_cast<int>(si), s));
            for (const auto& f : forms.back()) all_forms.insert(f);
        }
        // difference hyperplanes, optionally with their integer translates
        // that meet the chart
        QMatrix corners = standard_simplex(dim);
        std::set<AffineForm> hyps;
        std::vector<AffineForm> flat(all_forms.begin(), all_forms.end());
        for (size_t a = 0; a < flat.size(); ++a)
            for (size_t b = a + 1; b < flat.size(); ++b) {
                AffineForm diff;
                diff.offset = flat[a].offset - flat[b].offset;
                for (size_t i = 0; i < dim; ++i)
                    diff.slope.push_back(flat[a].slope[i] - flat[b].slope[i]);
                bool slope_zero = true;
                for (const auto& s : diff.slope) slope_zero = slope_zero && s == 0;
                if (integer_shifts) {
                    Rational lo = diff.eval(corners[0]), hi = lo;
                    for (const auto& c : corners) {
                        Rational v = diff.eval(c);
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
                    for (long c = rational_ceil(-hi); c <= rational_floor(-lo); ++c) {
                        AffineForm g = diff;
                        g.offset += c;
                        if (slope_zero && g.offset == 0) continue;
                        if (!slope_zero) hyps.insert(normalized(g));
                    }
                } else {
                    if (!slope_zero) hyps.insert(normalized(diff));
                }
            }
        std::vector<AffineForm> hyplist(hyps.begin(), hyps.end());
        out.hyperplanes.push_back(hyplist);

        std::vector<QMatrix> pieces{corners};
        for (const auto& h : hyplist) {
            std::vector<QMatrix> next;
            for (const auto& p : pieces) {
                std::vector<QMatrix> nonneg, nonpos;
                split_simplex(p, h, nonneg, nonpos);
                next.insert(next.end(), nonneg.begin(), nonneg.end());
                next.insert(next.end(), nonpos.begin(), nonpos.end());
            }
            pieces = std::move(next);
        }

        // group sign-pure pieces into arrangement cells
        std::map<std::vector<int>, Cell> cells;
        for (const auto& p : pieces) {
            QVec bc = barycenter(p);
            std::vector<int> sig;
            for (const auto& h : hyplist) sig.push_back(sign_of(h.eval(bc)));
            auto [it, fresh] = cells.try_emplace(sig);
            Cell& cell = it->second;
            if (fresh) {
                cell.simplex_index = static_cast<int>(si);
                cell.sign_vector = sig;
            }
            cell.pieces.push_back(p);
        }
        for (auto& [sig, cell] : cells) {
            std::set<QVec, QVecLess> verts;
            for (const auto& p : cell.pieces)
                for (const auto& v : p) verts.insert(v);
            cell.vertices.assign(verts.begin(), verts.end());
            QVec bc = barycenter(cell.pieces[0]);
            for (size_t sec = 0; sec < sections.size(); ++sec) {
                const AffineForm* best = nullptr;
                Rational best_val(0);
                for (const auto& f : forms[sec]) {
                    Rational v = f.eval(bc);
                    if (!best || v < best_val || (v == best_val && f < *best)) {
                        best = &f;
                        best_val = v;
                    }
                }
                cell.section_form.push_back(*best);
            }
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

std::vector<SkeletonPoint> subdivision_vertices(const SkeletonComplex& k, const Subdivision& s) {
    std::map<QVec, SkeletonPoint, QVecLess> by_weights;
    for (const auto& cell : s.cells)
        for (const auto& u : cell.vertices) {
            SkeletonPoint p = u_point(k, cell.simplex_index, u);
            MonomialValuation v = point_valuation(k, p);
            by_weights.try_emplace(v.weights, std::move(p));
        }
    std::vector<SkeletonPoint> out;
    out.reserve(by_weights.size());
    for (auto& [w, p] : by_weights) out.push_back(std::move(p));
    return out;
}

bool verify_subdivision(const SkeletonComplex& k, const std::vector<LaurentPoly>& sections,
                        const Subdivision& s) {
    for (const auto& cell : s.cells)
        for (const auto& piece : cell.pieces) {
            QMatrix probes = piece;
            probes.push_back(barycenter(piece));
            for (const auto& u : probes) {
                SkeletonPoint p = u_point(k, cell.simplex_index, u);
                MonomialValuation v = point_valuation(k, p);
                for (size_t sec = 0; sec < sections.size(); ++sec) {
                    OrdValue o = eval_valuation(v, sections[sec]);
                    if (o.infinite) return false;
                    if (o.value != cell.section_form[sec].eval(u)) return false;
                }
            }
        }
    return true;
}

} // namespace reesdiag
