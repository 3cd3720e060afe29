#include "reesdiag/errors.hpp"
#include "reesdiag/theta.hpp"

#include <doctest.h>

#include <set>

using namespace reesdiag;

namespace {

const std::vector<std::string> kX{"x"};
const std::vector<std::string> kXY{"x", "y"};

SkeletonComplex interval() {
    return SkeletonComplex::create(1, 8,
                                   {{"E1", {rat(0)}, 1, rat(0)},
                                    {"E2", {rat(1)}, 1, rat(0)},
                                    {"E3", {rat(0)}, 1, rat(0)}},
                                   {{0, 1}, {1, 2}});
}

SkeletonComplex torus_chart() {
    return SkeletonComplex::create(2, 8,
                                   {{"F0", {rat(0), rat(0)}, 1, rat(0)},
                                    {"F1", {rat(1), rat(0)}, 1, rat(0)},
                                    {"F2", {rat(0), rat(1)}, 1, rat(0)}},
                                   {{0, 1, 2}});
}

LaurentPoly px(const char* s, long prec = 8) { return parse_laurent(s, kX, prec); }
LaurentPoly pxy(const char* s, long prec = 8) { return parse_laurent(s, kXY, prec); }

} // namespace

TEST_CASE("check_independence certifies monomials and rejects 1±x") {
    auto k = interval();
    SUBCASE("monomial basis is independent") {
        auto verdict = check_independence({px("1"), px("x")}, k);
        CHECK(verdict.independent);
    }
    SUBCASE("degenerate input is rejected at the precondition") {
        CHECK_THROWS_AS(check_independence({px("x"), px("x + x")}, k), Error);
    }
    SUBCASE("{1+x, 1-x} fails at the interior vertex") {
        auto verdict = check_independence({px("1 + x"), px("1 - x")}, k);
        REQUIRE_FALSE(verdict.independent);
        REQUIRE(verdict.counterexample.has_value());
        auto v = point_valuation(k, *verdict.counterexample);
        CHECK(v.weights == QVec{rat(1)}); // the middle vertex E2
    }
    SUBCASE("{1, x} passes on the crossing chart too") {
        auto verdict = check_independence({px("1"), px("x"), px("x^2")}, k);
        CHECK(verdict.independent);
    }
}

TEST_CASE("construct_basis") {
    auto k = interval();
    SUBCASE("monomial space returns monomials up to units") {
        auto space = SectionSpace::create({pxy("1")}, 2, 8);
        auto kt = torus_chart();
        auto v = SectionSpace::create({pxy("1"), pxy("x"), pxy("y"), pxy("x*y")}, 2, 8);
        auto res = construct_basis(v, kt);
        REQUIRE(res.success);
        CHECK(res.basis.sections.size() == 4);
        // each section must be a unit multiple of a distinct monomial
        std::set<std::vector<long>> seen;
        for (const auto& s : res.basis.sections) {
            REQUIRE(s.terms().size() >= 1);
            // lowest t-degree term is a single monomial
            auto lead = s.terms().begin();
            seen.insert(lead->first.exps);
        }
        CHECK(seen.size() == 4);
        auto verdict = check_independence(res.basis.sections, kt);
        CHECK(verdict.independent);
    }
    SUBCASE("span{1+x, x} diagonalizes to {1, x} up to units") {
        auto v = SectionSpace::create({px("1 + x"), px("x")}, 1, 8);
        auto res = construct_basis(v, k);
        REQUIRE(res.success);
        auto verdict = check_independence(res.basis.sections, k);
        CHECK(verdict.independent);
        // tropically the result matches {1, x}
        bool has_const = false, has_x = false;
        for (const auto& s : res.basis.sections) {
            auto d0 = trop_shift_difference(s, px("1"), k);
            auto d1 = trop_shift_difference(s, px("x"), k);
            has_const = has_const || d0.has_value();
            has_x = has_x || d1.has_value();
        }
        CHECK(has_const);
        CHECK(has_x);
    }
    SUBCASE("round trip: construct then check") {
        auto v = SectionSpace::create({px("1 + x"), px("1 - x"), px("x^2 + t")}, 1, 8);
        auto res = construct_basis(v, k);
        REQUIRE(res.success);
        CHECK(check_independence(res.basis.sections, k).independent);
    }
}

TEST_CASE("construct_basis seed invariance of trop functions") {
    auto k = interval();
    auto v = SectionSpace::create({px("1 + x"), px("x"), px("x^2 - x")}, 1, 8);
    auto a = construct_basis(v, k, 1);
    auto b = construct_basis(v, k, 424242);
    REQUIRE(a.success);
    REQUIRE(b.success);
    // equal multisets of tropical functions modulo integer shifts
    std::vector<bool> used(b.basis.sections.size(), false);
    for (const auto& sa : a.basis.sections) {
        bool matched = false;
        for (size_t j = 0; j < b.basis.sections.size() && !matched; ++j) {
            if (used[j]) continue;
            if (trop_shift_difference(sa, b.basis.sections[j], k)) {
                used[j] = true;
                matched = true;
            }
        }
        CHECK(matched);
    }
}

TEST_CASE("metric shift invariance of verdicts") {
    auto k = interval();
    VerticalDivisor d{2, -1, 3};
    SUBCASE("independent basis stays independent") {
        auto with = check_independence({px("1"), px("x")}, k, &d);
        CHECK(with.independent);
    }
    SUBCASE("failing basis stays failing") {
        auto with = check_independence({px("1 + x"), px("1 - x")}, k, &d);
        CHECK_FALSE(with.independent);
    }
    SUBCASE("construct verdict is unchanged") {
        auto v = SectionSpace::create({px("1 + x"), px("x")}, 1, 8);
        CHECK(construct_basis(v, k, 0, &d).success);
    }
}

TEST_CASE("maximal case: no two trop functions differ by an integer") {
    auto kt = torus_chart();
    auto v = SectionSpace::create({pxy("1"), pxy("x"), pxy("y"), pxy("x*y")}, 2, 8);
    auto res = construct_basis(v, kt);
    REQUIRE(res.success);
    for (size_t i = 0; i < res.basis.sections.size(); ++i)
        for (size_t j = i + 1; j < res.basis.sections.size(); ++j)
            CHECK_FALSE(trop_shift_difference(res.basis.sections[i], res.basis.sections[j], kt)
                            .has_value());
}

TEST_CASE("extend_basis keeps the inner basis verbatim") {
    auto k = interval();
    SUBCASE("equal spaces return the inner basis") {
        auto v = SectionSpace::create({px("1"), px("x")}, 1, 8);
        auto out = extend_basis({px("1"), px("x")}, v, k);
        CHECK(out.sections.size() == 2);
        CHECK(out.sections[0] == px("1"));
        CHECK(out.sections[1] == px("x"));
    }
    SUBCASE("monomial tower step") {
        auto v = SectionSpace::create({px("1"), px("x")}, 1, 8);
        auto out = extend_basis({px("1")}, v, k);
        REQUIRE(out.sections.size() == 2);
        CHECK(out.sections[0] == px("1"));
    }
    SUBCASE("the fixture {1, x} into {1, x, x^2, 1 + x^2}") {
        auto v = SectionSpace::create({px("1"), px("x"), px("x^2"), px("x^3 + x")}, 1, 8);
        auto out = extend_basis({px("1"), px("x")}, v, k);
        REQUIRE(out.sections.size() == 4);
        CHECK(out.sections[0] == px("1"));
        CHECK(out.sections[1] == px("x"));
    }
    SUBCASE("nesting violation is reported") {
        auto v = SectionSpace::create({px("1"), px("x")}, 1, 8);
        CHECK_THROWS_AS(extend_basis({px("y + 1 - 1 + x^3")}, v, k), Error);
    }
}

TEST_CASE("cone assembly and extraction") {
    auto kt = torus_chart();
    auto w0 = SectionSpace::create({pxy("1")}, 2, 8);
    auto w1 = SectionSpace::create({pxy("x"), pxy("y")}, 2, 8);
    auto w2 = SectionSpace::create({pxy("x^2"), pxy("x*y"), pxy("y^2")}, 2, 8);
    ConeSpace cone = cone_assemble({w0, w1, w2});
    CHECK(cone.total_rank == 6);

    SUBCASE("level valuation formulas") {
        // f = f_0 + f_2, levels 0 and 2
        QVec c(6, Rational(0));
        c[0] = 1;
        c[3] = 1;
        CHECK(cone_ord_0(cone, c) == rat(0));
        CHECK(cone_ord_d(cone, c) == rat(-2));
        // w(f_0 + f_1) = min(v(f_0), v(f_1))
        MonomialValuation v{{rat(1), rat(1)}};
        QVec c2(6, Rational(0));
        c2[0] = 1; // 1 at level 0
        c2[1] = 1; // x at level 1
        CHECK(cone_lift_value(cone, v, c2) == rat(0));
    }

    SUBCASE("construct and extract per level") {
        ConeBasis theta = cone_construct(cone, kt);
        CHECK(theta.coords.size() == 6);
        for (int m = 0; m < 3; ++m) {
            auto level = cone_extract(cone, theta, m, kt);
            CHECK(static_cast<int>(level.size()) == cone.levels[static_cast<size_t>(m)].rank());
        }
        auto consts = cone_extract(cone, theta, 0, kt);
        REQUIRE(consts.size() == 1);
        CHECK(consts[0].terms().begin()->first.exps == std::vector<long>{0, 0});
    }
}

TEST_CASE("equivariant diagonalization") {
    long prec = 8;
    SUBCASE("distinct weights: basis is the input up to units") {
        auto v = SectionSpace::create({pxy("x"), pxy("y")}, 2, prec);
        std::vector<std::vector<long>> tags{{1, 0}, {0, 1}};
        auto f = DvrFiltration::diagonal({rat(0), rat(1)}, 1, prec);
        auto res = equivariant_diagonalize(v, tags, {f});
        CHECK(res.sections.size() == 2);
        for (size_t i = 0; i < res.vectors.size(); ++i) {
            int nonzero = 0;
            for (const auto& e : res.vectors[i])
                if (!e.is_zero()) ++nonzero;
            CHECK(nonzero == 1); // homogeneous: one block each
        }
    }
    SUBCASE("equal weights diagonalize within the block") {
        auto v = SectionSpace::create({pxy("x + y"), pxy("y")}, 2, prec);
        std::vector<std::vector<long>> tags{{1}, {1}};
        // sheared filtration in the ambient coordinates
        SVec e1{TruncatedSeries::one(prec), TruncatedSeries(rat(-1), prec)};
        SVec e2{TruncatedSeries::zero(prec), TruncatedSeries::one(prec)};
        auto f = DvrFiltration::diagonal_in_basis({e1, e2}, {rat(0), rat(1)}, 1, prec);
        auto res = equivariant_diagonalize(v, tags, {f});
        CHECK(res.sections.size() == 2);
    }
    SUBCASE("incompatible filtration is rejected") {
        auto v = SectionSpace::create({pxy("x"), pxy("y")}, 2, prec);
        std::vector<std::vector<long>> tags{{1, 0}, {0, 1}};
        SVec mix{TruncatedSeries::one(prec), TruncatedSeries::one(prec)};
        SVec e2{TruncatedSeries::zero(prec), TruncatedSeries::one(prec)};
        // F^1 = R(e1+e2) ⊕ tRe2 does not split into weight blocks
        auto f = DvrFiltration::diagonal_in_basis({mix, e2}, {rat(1), rat(0)}, 1, prec);
        CHECK_THROWS_AS(equivariant_diagonalize(v, tags, {f}), Error);
    }
}

TEST_CASE("gr ring sample checks") {
    auto k = interval();
    auto v0 = SectionSpace::create({px("1")}, 1, 8);
    auto v1 = SectionSpace::create({px("1"), px("x")}, 1, 8);
    auto v2 = SectionSpace::create({px("1"), px("x"), px("x^2")}, 1, 8);
    SUBCASE("monomial family passes") {
        auto report = gr_ring_check({v0, v1, v2}, 0, 0, k, 20);
        CHECK(report.multiplicativity_failures == 0);
        CHECK(report.injectivity_failures == 0);
        CHECK_FALSE(report.reducedness_checked);
    }
    SUBCASE("empty sample trivially passes with a note") {
        auto report = gr_ring_check({v0, v1}, 0, 0, k, 0);
        CHECK(report.multiplicativity_checked == 0);
        CHECK(report.notes.size() == 1);
    }
}
