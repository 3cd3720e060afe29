#include "reesdiag/theta.hpp"

#include "reesdiag/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace reesdiag {

LaurentPoly combine_sections(const std::vector<LaurentPoly>& sections, const SVec& coords) {
    if (sections.size() != coords.size())
        fail(ErrorKind::DimensionMismatch, "one coordinate per section expected");
    LaurentPoly acc(sections[0].num_vars(), sections[0].precision());
    std::vector<long> zero(static_cast<size_t>(sections[0].num_vars()), 0);
    for (size_t j = 0; j < sections.size(); ++j)
        for (const auto& [k, c] : coords[j].coeffs()) acc = acc + sections[j].mono_mul(c, k, zero);
    return acc;
}

LaurentPoly combine_sections_q(const std::vector<LaurentPoly>& sections, const QVec& coords) {
    LaurentPoly acc(sections[0].num_vars(), sections[0].precision());
    for (size_t j = 0; j < sections.size(); ++j) acc = acc + sections[j] * coords[j];
    return acc;
}

namespace {

// Per-vertex vertical shift of the induced filtration, when a metric
// twist is requested.
Rational shift_at(const SkeletonComplex& k, const SkeletonPoint& p, const VerticalDivisor* d) {
    if (!d) return Rational(0);
    if (d->size() != k.vertices().size())
        fail(ErrorKind::DimensionMismatch, "one divisor coefficient per skeleton vertex");
    std::vector<long> local;
    for (int idx : p.simplex) local.push_back((*d)[static_cast<size_t>(idx)]);
    return metric_shift_value(k.divisors_of(p.simplex), p.bary, local);
}

struct VertexData {
    std::vector<SkeletonPoint> points;
    std::vector<MonomialValuation> valuations;
    std::vector<Rational> shifts;
};

VertexData vertex_data(const SkeletonComplex& k, const Subdivision& sub,
                       const VerticalDivisor* metric) {
    VertexData out;
    out.points = subdivision_vertices(k, sub);
    for (const auto& p : out.points) {
        out.valuations.push_back(point_valuation(k, p));
        out.shifts.push_back(shift_at(k, p, metric));
    }
    return out;
}

} // namespace

IndependenceVerdict check_independence(const std::vector<LaurentPoly>& basis,
                                       const SkeletonComplex& k, const VerticalDivisor* metric) {
    if (basis.empty()) fail(ErrorKind::NotABasis, "empty candidate basis");
    SectionSpace space = SectionSpace::create(basis, k.num_vars(), k.precision());

    Subdivision sub = refine(k, basis, /*integer_shifts=*/true);
    if (!verify_subdivision(k, basis, sub))
        fail(ErrorKind::Internal, "refinement failed its spot re-verification");
    VertexData vs = vertex_data(k, sub, metric);

    IndependenceVerdict verdict;
    verdict.basis.sections = basis;
    verdict.basis.vertices = vs.points;
    verdict.basis.vertex_valuations = vs.valuations;
    verdict.basis.ord_vectors.assign(basis.size(), QVec(vs.points.size(), Rational(0)));

    std::vector<SVec> units;
    for (size_t i = 0; i < basis.size(); ++i) {
        SVec e = svec_zero(static_cast<int>(basis.size()), space.precision());
        e[i] = TruncatedSeries::one(space.precision());
        units.push_back(std::move(e));
    }

    for (size_t vi = 0; vi < vs.points.size(); ++vi) {
        DvrFiltration f = induced_filtration(vs.valuations[vi], space);
        if (vs.shifts[vi] != 0) f = f.shifted(vs.shifts[vi]);
        std::vector<QVec> ords(basis.size());
        for (size_t i = 0; i < basis.size(); ++i) {
            OrdValue o = eval_valuation(vs.valuations[vi], basis[i]);
            ords[i] = QVec{o.value + vs.shifts[vi]};
            verdict.basis.ord_vectors[i][vi] = ords[i][0];
        }
        if (!verify_diagonalizes_dvr(units, ords, {f})) {
            verdict.independent = false;
            verdict.counterexample = vs.points[vi];
            std::ostringstream os;
            os << "span identities fail at the subdivision vertex with weights (";
            for (size_t w = 0; w < vs.valuations[vi].weights.size(); ++w) {
                if (w) os << ",";
                os << rational_str(vs.valuations[vi].weights[w]);
            }
            os << ")";
            verdict.detail = os.str();
            return verdict;
        }
    }
    verdict.independent = true;
    return verdict;
}

ConstructResult construct_basis(const SectionSpace& v, const SkeletonComplex& k,
                                std::uint64_t seed, const VerticalDivisor* metric) {
    Subdivision sub = refine(k, v.sections(), /*integer_shifts=*/true);
    if (!verify_subdivision(k, v.sections(), sub))
        fail(ErrorKind::Internal, "refinement failed its spot re-verification");
    VertexData vs = vertex_data(k, sub, metric);

    std::vector<DvrFiltration> fs;
    for (size_t vi = 0; vi < vs.points.size(); ++vi) {
        DvrFiltration f = induced_filtration(vs.valuations[vi], v);
        if (vs.shifts[vi] != 0) f = f.shifted(vs.shifts[vi]);
        fs.push_back(std::move(f));
    }

    ConstructResult out;
    out.vertices = vs.points;
    DvrDiagResult diag = diagonalize_dvr(fs, seed);
    out.obstruction = diag.table;
    if (!diag.success) {
        out.success = false;
        return out;
    }
    out.success = true;
    out.basis.vertices = vs.points;
    out.basis.vertex_valuations = vs.valuations;
    for (size_t i = 0; i < diag.basis.vectors.size(); ++i) {
        LaurentPoly theta = combine_sections(v.sections(), diag.basis.vectors[i]);
        // contract: the reported ord is the shifted valuation of the section
        for (size_t vi = 0; vi < fs.size(); ++vi) {
            OrdValue o = eval_valuation(vs.valuations[vi], theta);
            if (o.infinite || o.value + vs.shifts[vi] != diag.basis.ord_vectors[i][vi])
                fail(ErrorKind::Internal, "constructed section ord disagrees with its table key");
        }
        out.basis.sections.push_back(std::move(theta));
        out.basis.ord_vectors.push_back(diag.basis.ord_vectors[i]);
    }
    return out;
}

namespace {

// Monomial-key flattening of sections into exact Q-vectors.
std::vector<Monomial> monomial_union(const std::vector<LaurentPoly>& sections) {
    std::set<Monomial> keys;
    for (const auto& s : sections)
        for (const auto& [m, c] : s.terms()) keys.insert(m);
    return {keys.begin(), keys.end()};
}

QVec flatten_poly(const LaurentPoly& s, const std::vector<Monomial>& keys) {
    QVec v(keys.size(), Rational(0));
    for (size_t i = 0; i < keys.size(); ++i) {
        auto it = s.terms().find(keys[i]);
        if (it != s.terms().end()) v[i] = it->second;
    }
    return v;
}

// Field-case induced filtration of the Q-span of the sections at a
// monomial valuation: jumps at the finitely many term values.
FieldFiltration field_filtration_from_valuation(const MonomialValuation& v,
                                                const std::vector<LaurentPoly>& sections) {
    int n = static_cast<int>(sections.size());
    std::set<Rational> values;
    struct TermVal {
        size_t section;
        Monomial mon;
        Rational coeff;
        Rational value;
    };
    std::vector<TermVal> terms;
    for (size_t i = 0; i < sections.size(); ++i)
        for (const auto& [m, c] : sections[i].terms()) {
            Rational val(m.tdeg);
            for (size_t j = 0; j < v.weights.size(); ++j) val += v.weights[j] * m.exps[j];
            values.insert(val);
            terms.push_back({i, m, c, val});
        }
    std::vector<std::pair<Rational, Subspace>> jumps;
    for (const auto& lambda : values) {
        // conditions: coefficients of all monomial keys whose value < lambda
        std::map<Monomial, QVec> conditions;
        for (const auto& t : terms) {
            if (t.value >= lambda) continue;
            auto [it, fresh] = conditions.try_emplace(t.mon, QVec(sections.size(), Rational(0)));
            it->second[t.section] += t.coeff;
        }
        QMatrix rows;
        for (auto& [m, row] : conditions) rows.push_back(std::move(row));
        Subspace space = rows.empty() ? Subspace::full(n) : Subspace::span(n, kernel(rows, n));
        if (!jumps.empty() && jumps.back().second == space) continue; // plateau
        if (space.dim() == 0) break; // zero beyond the last stored jump
        jumps.emplace_back(lambda, space);
    }
    return FieldFiltration::from_jumps(n, std::move(jumps));
}

Subspace field_above(const std::vector<FieldFiltration>& fs, const QVec& lambda) {
    int n = fs[0].ambient_dim();
    Subspace above = Subspace::zero(n);
    for (size_t j = 0; j < fs.size(); ++j) {
        auto nj = fs[j].next_jump(lambda[j]);
        if (!nj) continue;
        QVec mu = lambda;
        mu[j] = *nj;
        above = above + multi_intersection(fs, mu);
    }
    return above;
}

} // namespace

ThetaBasis extend_basis(const std::vector<LaurentPoly>& inner, const SectionSpace& vm,
                        const SkeletonComplex& k) {
    // coordinates of the inner sections inside V_m (k-linear by design)
    std::vector<LaurentPoly> all = vm.sections();
    all.insert(all.end(), inner.begin(), inner.end());
    auto keys = monomial_union(all);
    QMatrix section_rows;
    for (const auto& s : vm.sections()) section_rows.push_back(flatten_poly(s, keys));
    QMatrix inner_coords;
    for (const auto& s : inner) {
        QVec c;
        if (!solve_in_span(section_rows, flatten_poly(s, keys), &c))
            fail(ErrorKind::NestingViolated,
                 "inner basis is not contained in the target section space");
        inner_coords.push_back(std::move(c));
    }

    Subdivision sub = refine(k, vm.sections(), /*integer_shifts=*/false);
    VertexData vs = vertex_data(k, sub, nullptr);
    std::vector<FieldFiltration> fs;
    for (const auto& val : vs.valuations)
        fs.push_back(field_filtration_from_valuation(val, vm.sections()));

    GradedTable table = graded_table(fs);
    if (table.total() != vm.rank())
        fail(ErrorKind::InvariantViolation,
             "target space is not simultaneously diagonalizable at the subdivision vertices");

    // graded classes of the inner sections, grouped by their ord vectors
    std::map<QVec, QMatrix, QVecLess> inner_by_lambda;
    std::vector<QVec> inner_lambda;
    for (size_t i = 0; i < inner.size(); ++i) {
        QVec lambda;
        for (const auto& val : vs.valuations) {
            OrdValue o = eval_valuation(val, inner[i]);
            if (o.infinite) fail(ErrorKind::NestingViolated, "inner section vanishes mod t^N");
            lambda.push_back(o.value);
        }
        inner_by_lambda[lambda].push_back(inner_coords[i]);
        inner_lambda.push_back(std::move(lambda));
    }

    // injectivity: classes must stay independent inside gr(V_m)
    for (const auto& [lambda, rows] : inner_by_lambda) {
        Subspace above = field_above(fs, lambda);
        Subspace f_at = multi_intersection(fs, lambda);
        for (const auto& r : rows)
            if (!f_at.contains(r))
                fail(ErrorKind::NestingViolated, "inner section not in its own filtration step");
        QMatrix probe = above.basis();
        probe.insert(probe.end(), rows.begin(), rows.end());
        if (rank(probe) != above.dim() + static_cast<int>(rows.size()))
            fail(ErrorKind::NestingViolated,
                 "inner graded classes become dependent inside the target space");
    }

    // extend each graded piece, keeping the inner representatives first
    ThetaBasis out;
    out.vertices = vs.points;
    out.vertex_valuations = vs.valuations;
    out.sections = inner;
    for (size_t i = 0; i < inner.size(); ++i) out.ord_vectors.push_back(inner_lambda[i]);
    QMatrix all_coords = inner_coords;

    for (const auto& [lambda, piece] : table.entries) {
        Subspace above = field_above(fs, lambda);
        QMatrix work = above.basis();
        auto it = inner_by_lambda.find(lambda);
        if (it != inner_by_lambda.end())
            work.insert(work.end(), it->second.begin(), it->second.end());
        std::vector<int> piv;
        {
            QMatrix tmp = work;
            piv = rref(tmp);
            work = std::move(tmp);
        }
        for (const auto& rep : piece.representatives) {
            QVec red = reduce_against(work, piv, rep);
            if (is_zero_vec(red)) continue;
            out.sections.push_back(combine_sections_q(vm.sections(), red));
            out.ord_vectors.push_back(lambda);
            all_coords.push_back(red);
            work.push_back(std::move(red));
            piv = rref(work);
        }
    }
    if (static_cast<int>(out.sections.size()) != vm.rank())
        fail(ErrorKind::Internal, "extension did not produce a full basis");
    if (!verify_diagonalizes(all_coords, fs))
        fail(ErrorKind::Internal, "extended basis fails the span identities");
    return out;
}

ConeSpace cone_assemble(const std::vector<SectionSpace>& levels) {
    if (levels.empty()) fail(ErrorKind::InvariantViolation, "no levels given");
    ConeSpace cone;
    cone.levels = levels;
    cone.num_vars = levels[0].num_vars();
    cone.precision = levels[0].precision();
    for (size_t l = 0; l < levels.size(); ++l)
        for (int i = 0; i < levels[l].rank(); ++i) cone.level_of.push_back(static_cast<int>(l));
    cone.total_rank = static_cast<int>(cone.level_of.size());
    return cone;
}

namespace {

std::vector<QVec> cone_blocks(const ConeSpace& cone, const QVec& coords) {
    std::vector<QVec> blocks(cone.levels.size());
    size_t at = 0;
    for (size_t l = 0; l < cone.levels.size(); ++l) {
        blocks[l].assign(coords.begin() + static_cast<long>(at),
                         coords.begin() + static_cast<long>(at + cone.levels[l].rank()));
        at += static_cast<size_t>(cone.levels[l].rank());
    }
    return blocks;
}

} // namespace

Rational cone_ord_d(const ConeSpace& cone, const QVec& coords) {
    auto blocks = cone_blocks(cone, coords);
    for (size_t l = blocks.size(); l > 0; --l)
        if (!is_zero_vec(blocks[l - 1])) return Rational(-static_cast<long>(l - 1));
    fail(ErrorKind::InvariantViolation, "ord_D of the zero element");
}

Rational cone_ord_0(const ConeSpace& cone, const QVec& coords) {
    auto blocks = cone_blocks(cone, coords);
    for (size_t l = 0; l < blocks.size(); ++l)
        if (!is_zero_vec(blocks[l])) return Rational(static_cast<long>(l));
    fail(ErrorKind::InvariantViolation, "ord_0 of the zero element");
}

Rational cone_lift_value(const ConeSpace& cone, const MonomialValuation& v, const QVec& coords) {
    auto blocks = cone_blocks(cone, coords);
    bool first = true;
    Rational best(0);
    for (size_t l = 0; l < blocks.size(); ++l) {
        if (is_zero_vec(blocks[l])) continue;
        LaurentPoly f = combine_sections_q(cone.levels[l].sections(), blocks[l]);
        OrdValue o = eval_valuation(v, f);
        if (o.infinite) fail(ErrorKind::PrecisionExhausted, "level component vanishes mod t^N");
        if (first || o.value < best) best = o.value;
        first = false;
    }
    if (first) fail(ErrorKind::InvariantViolation, "valuation of the zero element");
    return best;
}

namespace {

// Direct sum of per-level field filtrations, embedded block-diagonally.
FieldFiltration assemble_blocks(const ConeSpace& cone,
                                const std::vector<FieldFiltration>& per_level) {
    int n = cone.total_rank;
    std::set<Rational> values;
    for (const auto& f : per_level)
        for (const auto& [l, w] : f.jumps()) values.insert(l);
    std::vector<std::pair<Rational, Subspace>> jumps;
    for (const auto& lambda : values) {
        QMatrix rows;
        size_t offset = 0;
        for (size_t l = 0; l < per_level.size(); ++l) {
            const Subspace& s = per_level[l].value(lambda);
            for (const auto& r : s.basis()) {
                QVec big(static_cast<size_t>(n), Rational(0));
                for (size_t c = 0; c < r.size(); ++c) big[offset + c] = r[c];
                rows.push_back(std::move(big));
            }
            offset += static_cast<size_t>(per_level[l].ambient_dim());
        }
        Subspace space = Subspace::span(n, std::move(rows));
        if (!jumps.empty() && jumps.back().second == space) continue;
        if (space.dim() == 0) break;
        jumps.emplace_back(lambda, space);
    }
    return FieldFiltration::from_jumps(n, std::move(jumps));
}

FieldFiltration level_filtration(const ConeSpace& cone, bool ord0) {
    int n = cone.total_rank;
    size_t nlevels = cone.levels.size();
    std::vector<std::pair<Rational, Subspace>> jumps;
    for (size_t step = 0; step < nlevels; ++step) {
        // ord_0: span of blocks >= step at lambda = step
        // ord_D: span of blocks <= nlevels-1-step at lambda = step - (nlevels-1)
        QMatrix rows;
        size_t offset = 0;
        for (size_t l = 0; l < nlevels; ++l) {
            bool keep = ord0 ? (l >= step) : (l + step <= nlevels - 1);
            if (keep)
                for (int i = 0; i < cone.levels[l].rank(); ++i) {
                    QVec big(static_cast<size_t>(n), Rational(0));
                    big[offset + static_cast<size_t>(i)] = 1;
                    rows.push_back(std::move(big));
                }
            offset += static_cast<size_t>(cone.levels[l].rank());
        }
        Rational lambda = ord0 ? Rational(static_cast<long>(step))
                               : Rational(static_cast<long>(step) -
                                          static_cast<long>(nlevels - 1));
        jumps.emplace_back(lambda, Subspace::span(n, std::move(rows)));
    }
    return FieldFiltration::from_jumps(n, std::move(jumps));
}

} // namespace

ConeBasis cone_construct(const ConeSpace& cone, const SkeletonComplex& k, std::uint64_t seed) {
    std::vector<LaurentPoly> all;
    for (const auto& lvl : cone.levels)
        all.insert(all.end(), lvl.sections().begin(), lvl.sections().end());
    Subdivision sub = refine(k, all, /*integer_shifts=*/false);
    VertexData vs = vertex_data(k, sub, nullptr);

    std::vector<FieldFiltration> fs;
    for (const auto& val : vs.valuations) {
        std::vector<FieldFiltration> per_level;
        for (const auto& lvl : cone.levels)
            per_level.push_back(field_filtration_from_valuation(val, lvl.sections()));
        fs.push_back(assemble_blocks(cone, per_level));
    }
    size_t tracked = fs.size();
    fs.push_back(level_filtration(cone, /*ord0=*/true));
    fs.push_back(level_filtration(cone, /*ord0=*/false));

    FieldDiagResult diag = diagonalize_field(fs, seed);
    if (!diag.success)
        fail(ErrorKind::NotGradedBasis,
             "cone filtrations are not simultaneously diagonalizable (gr total " +
                 std::to_string(diag.obstruction.total()) + " != rank " +
                 std::to_string(cone.total_rank) + ")");
    ConeBasis out;
    out.vertices = vs.points;
    out.coords = diag.basis.vectors;
    for (size_t i = 0; i < diag.basis.vectors.size(); ++i) {
        QVec ord(tracked);
        for (size_t t = 0; t < tracked; ++t) ord[t] = diag.basis.ord_vectors[i][t];
        out.ord_vectors.push_back(std::move(ord));
        out.ord0.push_back(cone_ord_0(cone, diag.basis.vectors[i]));
        out.ordD.push_back(cone_ord_d(cone, diag.basis.vectors[i]));
        // diagonality for the level filtrations makes the reported ords the
        // true level valuations
        if (out.ord0.back() != diag.basis.ord_vectors[i][tracked] ||
            out.ordD.back() != diag.basis.ord_vectors[i][tracked + 1])
            fail(ErrorKind::Internal, "level valuation disagrees with its table key");
    }
    return out;
}

std::vector<LaurentPoly> cone_extract(const ConeSpace& cone, const ConeBasis& theta, int m,
                                      const SkeletonComplex& k) {
    if (m < 0 || m >= static_cast<int>(cone.levels.size()))
        fail(ErrorKind::InvariantViolation, "no such level");
    // elements with ord_0 exactly m project isomorphically onto W_m
    QMatrix block_rows;
    std::vector<LaurentPoly> out;
    size_t offset = 0;
    for (int l = 0; l < m; ++l) offset += static_cast<size_t>(cone.levels[l].rank());
    const SectionSpace& wm = cone.levels[static_cast<size_t>(m)];
    for (size_t i = 0; i < theta.coords.size(); ++i) {
        if (theta.ord0[i] != m) continue;
        QVec block(theta.coords[i].begin() + static_cast<long>(offset),
                   theta.coords[i].begin() + static_cast<long>(offset) +
                       static_cast<long>(wm.rank()));
        block_rows.push_back(block);
        out.push_back(combine_sections_q(wm.sections(), block));
    }
    if (static_cast<int>(out.size()) != wm.rank() ||
        rank(block_rows) != wm.rank())
        fail(ErrorKind::NotGradedBasis,
             "extracted sub-collection does not span the requested level");
    // re-certify against the restricted lifted valuations
    Subdivision sub = refine(k, wm.sections(), /*integer_shifts=*/false);
    VertexData vs = vertex_data(k, sub, nullptr);
    std::vector<FieldFiltration> fs;
    for (const auto& val : vs.valuations)
        fs.push_back(field_filtration_from_valuation(val, wm.sections()));
    if (!verify_diagonalizes(block_rows, fs))
        fail(ErrorKind::NotGradedBasis, "extracted basis does not diagonalize the level");
    return out;
}

EquivariantResult equivariant_diagonalize(const SectionSpace& v,
                                          const std::vector<std::vector<long>>& weight_tags,
                                          const std::vector<DvrFiltration>& fs) {
    int n = v.rank();
    if (static_cast<int>(weight_tags.size()) != n)
        fail(ErrorKind::DimensionMismatch, "one weight tag per section expected");
    std::map<std::vector<long>, std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) blocks[weight_tags[static_cast<size_t>(i)]].push_back(i);

    // weight compatibility: every jump must split as the direct sum of its
    // blocks
    for (const auto& f : fs) {
        for (const auto& [l, w] : f.jumps()) {
            long m = std::max<long>(w.floor_exponent(), 1);
            int width = n * static_cast<int>(m);
            QMatrix lin = w.floor_exponent() == 0 ? Subspace::full(width).basis()
                                                  : QMatrix();
            if (w.floor_exponent() != 0) lin = w.linearization();
            Subspace s = Subspace::span(width, lin);
            int split_total = 0;
            for (const auto& [tag, idxs] : blocks) {
                QMatrix coord_rows;
                for (int j : idxs)
                    for (long kk = 0; kk < m; ++kk) {
                        QVec r(static_cast<size_t>(width), Rational(0));
                        r[static_cast<size_t>(j) * static_cast<size_t>(m) +
                          static_cast<size_t>(kk)] = 1;
                        coord_rows.push_back(std::move(r));
                    }
                split_total += intersect(s, Subspace::span(width, coord_rows)).dim();
            }
            if (split_total != s.dim())
                fail(ErrorKind::NotWeightCompatible,
                     "a filtration step mixes distinct weight blocks");
        }
    }

    EquivariantResult out;
    for (const auto& [tag, idxs] : blocks) {
        int bn = static_cast<int>(idxs.size());
        // block filtrations: restrict each jump to the block coordinates
        std::vector<DvrFiltration> block_fs;
        for (const auto& f : fs) {
            std::vector<std::pair<Rational, Submodule>> jumps;
            for (const auto& [l, w] : f.jumps()) {
                long m = w.floor_exponent();
                if (m == 0) {
                    jumps.emplace_back(l, Submodule::full(bn));
                    continue;
                }
                int width = n * static_cast<int>(m);
                QMatrix coord_rows;
                for (int j : idxs)
                    for (long kk = 0; kk < m; ++kk) {
                        QVec r(static_cast<size_t>(width), Rational(0));
                        r[static_cast<size_t>(j) * static_cast<size_t>(m) +
                          static_cast<size_t>(kk)] = 1;
                        coord_rows.push_back(std::move(r));
                    }
                Subspace inter = intersect(Subspace::span(width, w.linearization()),
                                           Subspace::span(width, coord_rows));
                std::vector<SVec> gens;
                for (const auto& row : inter.basis()) {
                    SVec small = svec_zero(bn, f.precision());
                    for (int bj = 0; bj < bn; ++bj) {
                        int j = idxs[static_cast<size_t>(bj)];
                        for (long kk = 0; kk < m; ++kk) {
                            const Rational& c = row[static_cast<size_t>(j) * static_cast<size_t>(m) +
                                                    static_cast<size_t>(kk)];
                            if (c != 0) small[static_cast<size_t>(bj)].set_coeff(kk, c);
                        }
                    }
                    gens.push_back(std::move(small));
                }
                jumps.emplace_back(l, Submodule::from_generators(bn, gens, m));
            }
            block_fs.push_back(
                DvrFiltration::from_jumps(bn, f.denominator(), std::move(jumps), f.precision()));
        }
        DvrDiagResult diag = diagonalize_dvr(block_fs);
        if (!diag.success)
            fail(ErrorKind::NotDiagonalizableMod,
                 "weight block is not simultaneously diagonalizable");
        for (const auto& vec : diag.basis.vectors) {
            SVec big = svec_zero(n, v.precision());
            for (int bj = 0; bj < bn; ++bj) big[static_cast<size_t>(idxs[static_cast<size_t>(bj)])] = vec[static_cast<size_t>(bj)];
            out.sections.push_back(combine_sections(v.sections(), big));
            out.vectors.push_back(std::move(big));
            out.weights.push_back(tag);
        }
    }
    return out;
}

GrRingReport gr_ring_check(const std::vector<SectionSpace>& levels, int one_level, int one_index,
                           const SkeletonComplex& k, int max_samples) {
    GrRingReport report;
    if (levels.empty()) fail(ErrorKind::InvariantViolation, "no levels given");
    if (max_samples <= 0) {
        report.notes.push_back("empty sample: trivial pass");
        return report;
    }
    std::vector<LaurentPoly> all;
    for (const auto& lvl : levels)
        all.insert(all.end(), lvl.sections().begin(), lvl.sections().end());
    Subdivision sub = refine(k, all, /*integer_shifts=*/false);
    VertexData vs = vertex_data(k, sub, nullptr);

    const LaurentPoly& one = levels[static_cast<size_t>(one_level)]
                                 .sections()[static_cast<size_t>(one_index)];

    // (a) multiplicativity of the tracked valuations on sampled products
    int done = 0;
    for (size_t a = 0; a < levels.size() && done < max_samples; ++a)
        for (const auto& s : levels[a].sections()) {
            for (size_t b = a; b < levels.size() && done < max_samples; ++b)
                for (const auto& u : levels[b].sections()) {
                    if (done >= max_samples) break;
                    LaurentPoly p = laurent_mul(s, u);
                    if (p.is_zero()) continue;
                    ++done;
                    ++report.multiplicativity_checked;
                    for (const auto& val : vs.valuations) {
                        OrdValue os = eval_valuation(val, s);
                        OrdValue ou = eval_valuation(val, u);
                        OrdValue op = eval_valuation(val, p);
                        if (os.infinite || ou.infinite || op.infinite ||
                            op.value != os.value + ou.value) {
                            ++report.multiplicativity_failures;
                            break;
                        }
                    }
                }
        }

    // (b) injectivity of multiplication by the designated section on the
    // sampled graded pieces: classes of rep * one must stay independent.
    auto keys_of = [&](const SectionSpace& lvl) { return monomial_union(lvl.sections()); };
    for (size_t a = 0; a + one_level < levels.size(); ++a) {
        size_t target = a + static_cast<size_t>(one_level);
        if (target == a) continue;
        const SectionSpace& src = levels[a];
        const SectionSpace& dst = levels[target];
        std::vector<FieldFiltration> src_fs, dst_fs;
        for (const auto& val : vs.valuations) {
            src_fs.push_back(field_filtration_from_valuation(val, src.sections()));
            dst_fs.push_back(field_filtration_from_valuation(val, dst.sections()));
        }
        GradedTable src_table = graded_table(src_fs);
        auto dkeys = keys_of(dst);
        QMatrix dst_rows;
        for (const auto& s : dst.sections()) dst_rows.push_back(flatten_poly(s, dkeys));
        for (const auto& [lambda, piece] : src_table.entries) {
            if (report.injectivity_checked >= max_samples) break;
            ++report.injectivity_checked;
            // image classes
            QVec shift;
            QMatrix image_coords;
            bool expressible = true;
            for (const auto& rep : piece.representatives) {
                LaurentPoly prod = laurent_mul(combine_sections_q(src.sections(), rep), one);
                QVec c;
                QVec flat = flatten_poly(prod, dkeys);
                bool extra = false;
                for (const auto& [m, coef] : prod.terms())
                    if (std::find(dkeys.begin(), dkeys.end(), m) == dkeys.end()) extra = true;
                if (extra || !solve_in_span(dst_rows, flat, &c)) {
                    expressible = false;
                    break;
                }
                image_coords.push_back(std::move(c));
            }
            if (!expressible) {
                report.notes.push_back("a sampled product leaves the declared levels; skipped");
                continue;
            }
            QVec target_lambda = lambda;
            for (size_t t = 0; t < vs.valuations.size(); ++t) {
                OrdValue o = eval_valuation(vs.valuations[t], one);
                target_lambda[t] += o.value;
            }
            Subspace above = field_above(dst_fs, target_lambda);
            QMatrix probe = above.basis();
            probe.insert(probe.end(), image_coords.begin(), image_coords.end());
            if (rank(probe) != above.dim() + static_cast<int>(image_coords.size()))
                ++report.injectivity_failures;
        }
    }
    report.notes.push_back("reducedness of the graded ring: not checked");
    return report;
}

} // namespace reesdiag
