#include "reesdiag/errors.hpp"
#include "reesdiag/skeleton.hpp"
#include "reesdiag/tropical.hpp"

#include <doctest.h>

#include <set>

using namespace reesdiag;

namespace {

const std::vector<std::string> kX{"x"};
const std::vector<std::string> kXY{"x", "y"};

// Interval degeneration: path E1 - E2 - E3 with v(x) tenting 0 -> 1 -> 0.
SkeletonComplex interval() {
    return SkeletonComplex::create(1, 8,
                                   {{"E1", {rat(0)}, 1, rat(0)},
                                    {"E2", {rat(1)}, 1, rat(0)},
                                    {"E3", {rat(0)}, 1, rat(0)}},
                                   {{0, 1}, {1, 2}});
}

// One edge with a crossing: v(x) runs -1 -> 1.
SkeletonComplex crossing_edge() {
    return SkeletonComplex::create(
        1, 8, {{"E1", {rat(-1)}, 1, rat(0)}, {"E2", {rat(1)}, 1, rat(0)}}, {{0, 1}});
}

// Full 2-simplex on two torus variables.
SkeletonComplex triangle() {
    return SkeletonComplex::create(2, 8,
                                   {{"F0", {rat(0), rat(0)}, 1, rat(0)},
                                    {"F1", {rat(1), rat(0)}, 1, rat(0)},
                                    {"F2", {rat(0), rat(1)}, 1, rat(0)}},
                                   {{0, 1, 2}});
}

} // namespace

TEST_CASE("complex construction and faces") {
    auto k = triangle();
    CHECK(k.simplices().size() == 7); // 3 vertices + 3 edges + 1 triangle
    CHECK(k.maximal_simplices().size() == 1);
    CHECK(k.has_simplex({0, 2}));
    CHECK_FALSE(k.has_simplex({0, 3}));
    CHECK_THROWS_AS(SkeletonComplex::create(
                        1, 8, {{"bad", {rat(0)}, 1, rat(1)}}, {{0}}),
                    Error); // A > 0 cannot be a skeleton vertex
    CHECK_THROWS_AS(SkeletonComplex::create(
                        1, 8, {{"bad", {rat(0)}, 0, rat(0)}}, {{0}}),
                    Error); // b >= 1
}

TEST_CASE("point_valuation formulas") {
    auto k = SkeletonComplex::create(
        1, 8, {{"E1", {rat(2)}, 1, rat(0)}, {"E2", {rat(5)}, 2, rat(0)}}, {{0, 1}});
    SUBCASE("vertex gives w/b") {
        auto v = point_valuation(k, {{0, 1}, {rat(1), rat(0)}});
        CHECK(v.weights == QVec{rat(2)});
        auto w = point_valuation(k, {{0, 1}, {rat(0), rat(1)}});
        CHECK(w.weights == QVec{rat(5, 2)});
    }
    SUBCASE("b=(1,2) midpoint: normalizer 3/2") {
        auto v = point_valuation(k, {{0, 1}, {rat(1, 2), rat(1, 2)}});
        CHECK(v.weights == QVec{rat(7, 3)}); // (2+5)/3
    }
    SUBCASE("b all 1: plain average") {
        auto k1 = crossing_edge();
        auto v = point_valuation(k1, {{0, 1}, {rat(1, 2), rat(1, 2)}});
        CHECK(v.weights == QVec{rat(0)});
    }
}

TEST_CASE("refine splits the crossing edge at the kink") {
    auto k = crossing_edge();
    auto s = parse_laurent("1 + x", kX, 8);
    Subdivision sub = refine(k, {s}, false);
    // two cells: v(x) <= 0 and v(x) >= 0
    CHECK(sub.cells.size() == 2);
    auto pts = subdivision_vertices(k, sub);
    CHECK(pts.size() == 3); // two ends plus the midpoint
    bool found_mid = false;
    for (const auto& p : pts) {
        auto v = point_valuation(k, p);
        if (v.weights == QVec{rat(0)}) found_mid = true;
    }
    CHECK(found_mid);
    CHECK(verify_subdivision(k, {s}, sub));
}

TEST_CASE("single monomial means no cuts") {
    auto k = triangle();
    auto s = parse_laurent("t*x^2*y^-1", kXY, 8);
    Subdivision sub = refine(k, {s}, false);
    CHECK(sub.cells.size() == 1);
    auto pts = subdivision_vertices(k, sub);
    CHECK(pts.size() == 3); // the triangle's own vertices
}

TEST_CASE("idempotent refinement for shared linearity regions") {
    auto k = crossing_edge();
    auto s1 = parse_laurent("1 + x", kX, 8);
    auto s2 = parse_laurent("2 + 3*x", kX, 8); // same kink locus
    Subdivision one = refine(k, {s1}, false);
    Subdivision both = refine(k, {s1, s2}, false);
    CHECK(one.cells.size() == both.cells.size());
}

TEST_CASE("refinement is monotone under adding sections") {
    auto k = triangle();
    auto s1 = parse_laurent("1 + x + y", kXY, 8);
    auto s2 = parse_laurent("x + t*y", kXY, 8);
    Subdivision coarse = refine(k, {s1}, false);
    Subdivision fine = refine(k, {s1, s2}, false);
    // every fine cell is sign-pure for every coarse hyperplane
    for (const auto& cell : fine.cells) {
        for (const auto& h : coarse.hyperplanes[static_cast<size_t>(cell.simplex_index)]) {
            int sign_seen = 0;
            bool pure = true;
            for (const auto& piece : cell.pieces)
                for (const auto& u : piece) {
                    Rational val = h.eval(u);
                    int s = val > 0 ? 1 : (val < 0 ? -1 : 0);
                    if (s == 0) continue;
                    if (sign_seen == 0) sign_seen = s;
                    pure = pure && (s == sign_seen);
                }
            CHECK(pure);
        }
    }
}

TEST_CASE("integer shifts add the R-combination kinks") {
    auto k = SkeletonComplex::create(
        1, 8, {{"E1", {rat(0)}, 1, rat(0)}, {"E2", {rat(3)}, 1, rat(0)}}, {{0, 1}});
    auto one = parse_laurent("1", kX, 8);
    auto x = parse_laurent("x", kX, 8);
    Subdivision pure = refine(k, {one, x}, false);
    Subdivision shifted = refine(k, {one, x}, true);
    // pure differences cut only at v(x)=0 (outside the edge), shifts add
    // v(x) = 1 and v(x) = 2 (t*1 vs x, t^2*1 vs x)
    CHECK(pure.cells.size() == 1);
    CHECK(shifted.cells.size() == 3);
    auto pts = subdivision_vertices(k, shifted);
    std::set<Rational> weights;
    for (const auto& p : pts) weights.insert(point_valuation(k, p).weights[0]);
    CHECK(weights.count(rat(1)) == 1);
    CHECK(weights.count(rat(2)) == 1);
}

TEST_CASE("tropicalize") {
    auto k = interval();
    SUBCASE("monomial is affine with a constant t-shift") {
        auto s = parse_laurent("x", kX, 8);
        auto ts = parse_laurent("t*x", kX, 8);
        TropicalFunction f = tropicalize(s, k);
        TropicalFunction g = tropicalize(ts, k);
        SkeletonPoint mid{{0, 1}, {rat(1, 2), rat(1, 2)}};
        CHECK(trop_eval(f, k, mid) == rat(1, 2));
        CHECK(trop_eval(g, k, mid) == rat(3, 2));
        auto d = trop_shift_difference(ts, s, k);
        REQUIRE(d.has_value());
        CHECK(*d == 1);
    }
    SUBCASE("1 + x kinks where the tent crosses 0") {
        auto s = parse_laurent("1 + x", kX, 8);
        TropicalFunction f = tropicalize(s, k);
        CHECK(trop_eval(f, k, SkeletonPoint{{1}, {rat(1)}}) == rat(0));
        CHECK(trop_eval(f, k, SkeletonPoint{{0, 1}, {rat(1, 4), rat(3, 4)}}) == rat(0));
    }
    SUBCASE("exactness against direct evaluation at random points") {
        SplitMix64 rng(3);
        auto s = parse_laurent("1 + 2*x + t*x^2", kX, 8);
        TropicalFunction f = tropicalize(s, k);
        for (int it = 0; it < 40; ++it) {
            long num = rng.range(0, 16);
            SkeletonPoint p{{0, 1}, {rat(num, 16), rat(16 - num, 16)}};
            if (rng.below(2)) p.simplex = {1, 2};
            auto v = point_valuation(k, p);
            CHECK(trop_eval(f, k, p) == eval_valuation(v, s).value);
        }
    }
    SUBCASE("no constant integer shift between x and 1") {
        auto d = trop_shift_difference(parse_laurent("x", kX, 8), parse_laurent("1", kX, 8), k);
        CHECK_FALSE(d.has_value());
    }
}
