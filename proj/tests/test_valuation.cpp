#include "reesdiag/errors.hpp"
#include "reesdiag/valuation.hpp"

#include <doctest.h>

using namespace reesdiag;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kX{"x"};

LaurentPoly pxy(const char* s, long prec = 8) { return parse_laurent(s, kXY, prec); }
LaurentPoly px(const char* s, long prec = 8) { return parse_laurent(s, kX, prec); }

} // namespace

TEST_CASE("eval_valuation on monomial data") {
    MonomialValuation v{{rat(1), rat(2)}};
    CHECK(eval_valuation(v, pxy("x^2*y + t*x^3")).value == rat(4));
    CHECK(eval_valuation(v, pxy("x + y")).value == rat(1));
    MonomialValuation h{{rat(1, 2)}};
    CHECK(eval_valuation(h, px("x^2")).value == rat(1));
    CHECK(eval_valuation(h, px("x^2")).value == 2 * eval_valuation(h, px("x")).value);
    CHECK(eval_valuation(v, pxy("0")).infinite);
}

TEST_CASE("eval_valuation is a valuation on random inputs") {
    SplitMix64 rng(5);
    MonomialValuation v{{rat(1, 3), rat(-1, 2)}};
    auto rand_poly = [&](long prec) {
        LaurentPoly f(2, prec);
        int n = 1 + static_cast<int>(rng.below(4));
        for (int i = 0; i < n; ++i)
            f.add_term(rng.range(0, 3), {rng.range(-2, 2), rng.range(-2, 2)},
                       rat(rng.range(-3, 3), rng.range(1, 2)));
        return f;
    };
    for (int it = 0; it < 60; ++it) {
        auto f = rand_poly(8), g = rand_poly(8);
        if (f.is_zero() || g.is_zero()) continue;
        auto vf = eval_valuation(v, f), vg = eval_valuation(v, g);
        auto vfg = eval_valuation(v, laurent_mul(f, g));
        auto vsum = eval_valuation(v, f + g);
        if (!vfg.infinite) CHECK(vfg.value == vf.value + vg.value);
        if (!vsum.infinite) CHECK(vsum.value >= std::min(vf.value, vg.value));
    }
}

TEST_CASE("section independence check") {
    CHECK(sections_independent({px("1"), px("x")}, 1, 8));
    CHECK_FALSE(sections_independent({px("x"), px("x + x")}, 1, 8));
    CHECK_FALSE(sections_independent({px("x"), px("t*x")}, 1, 8)); // R-dependent
    CHECK(sections_independent({px("x"), px("x + t")}, 1, 8));
    CHECK_THROWS_AS(SectionSpace::create({px("x"), px("2*x")}, 1, 8), Error);
}

TEST_CASE("induced_filtration on {1, x}") {
    auto space = SectionSpace::create({px("1"), px("x")}, 1, 8);
    MonomialValuation v{{rat(1, 2)}};
    DvrFiltration f = induced_filtration(v, space);
    CHECK(f.denominator() == 2);
    CHECK(f.check_condition5());
    SVec e1 = svec_zero(2, 8), e2 = svec_zero(2, 8);
    e1[0] = TruncatedSeries::one(8);
    e2[1] = TruncatedSeries::one(8);
    CHECK(ord_dvr(f, e1).value == rat(0));
    CHECK(ord_dvr(f, e2).value == rat(1, 2));
    // ord(t*s) = ord(s) + 1
    CHECK(ord_dvr(f, svec_t_shift(e2, 1)).value == rat(3, 2));
}

TEST_CASE("induced_filtration principal case") {
    auto space = SectionSpace::create({px("1")}, 1, 6);
    MonomialValuation v{{rat(1)}};
    DvrFiltration f = induced_filtration(v, space);
    // F^lambda = t^{ceil(lambda)} R for lambda > 0
    SVec one = svec_zero(1, 6);
    one[0] = TruncatedSeries::one(6);
    CHECK(ord_dvr(f, one).value == rat(0));
    CHECK(f.value(rat(1)) == Submodule::t_power_full(1, 1));
    CHECK(f.value(rat(1, 2)) == Submodule::t_power_full(1, 1));
    CHECK(f.value(rat(2)) == Submodule::t_power_full(1, 2));
}

TEST_CASE("induced_filtration separates x and x+t") {
    auto space = SectionSpace::create({px("x"), px("x + t")}, 1, 8);
    MonomialValuation v{{rat(2)}}; // v(x) = 2 > v(t) = 1
    DvrFiltration f = induced_filtration(v, space);
    SVec e1 = svec_zero(2, 8), e2 = svec_zero(2, 8);
    e1[0] = TruncatedSeries::one(8);
    e2[1] = TruncatedSeries::one(8);
    CHECK(ord_dvr(f, e1).value == rat(2));       // v(x)
    CHECK(ord_dvr(f, e2).value == rat(1));       // v(x+t) = min(2, 1)
    SVec diff = svec_add(e2, svec_scale(e1, TruncatedSeries(rat(-1), 8)));
    CHECK(ord_dvr(f, diff).value == rat(1));     // v(t) = 1
    // all five filtration axioms, machine checked
    CHECK(f.check_condition5());
}

TEST_CASE("induced filtration axioms on random weights") {
    SplitMix64 rng(19);
    for (int it = 0; it < 10; ++it) {
        auto space = SectionSpace::create({px("1"), px("x"), px("x^2 + t")}, 1, 10);
        MonomialValuation v{{rat(rng.range(-2, 2), rng.range(1, 3))}};
        DvrFiltration f = induced_filtration(v, space);
        CHECK(f.check_condition5());
    }
}

TEST_CASE("log discrepancy and skeleton membership") {
    DivisorData e1{"E1", {rat(1)}, 1, rat(0)};
    DivisorData e2{"E2", {rat(-1)}, 2, rat(0)};
    DivisorData a2{"A", {rat(0)}, 1, rat(2)};
    CHECK(log_discrepancy_on_cone({e1, e2}, {rat(1), rat(1)}) == rat(0));
    CHECK(log_discrepancy_on_cone({a2}, {rat(3)}) == rat(6));
    CHECK(log_discrepancy_on_cone({a2, e2}, {rat(1), rat(1)}) == rat(2));

    CHECK(skeleton_membership({e1}, {rat(1)}));       // alpha = e_j / b_j, b=1
    CHECK(skeleton_membership({e2}, {rat(1, 2)}));    // b=2 vertex point
    CHECK_FALSE(skeleton_membership({a2}, {rat(1)})); // A > 0
    CHECK_FALSE(skeleton_membership({e1, e2}, {rat(2), rat(0)})); // mass 2
}

TEST_CASE("metric shift values") {
    DivisorData e1{"E1", {rat(1)}, 1, rat(0)};
    DivisorData e2{"E2", {rat(-1)}, 2, rat(0)};
    SUBCASE("zero divisor is the identity") {
        CHECK(metric_shift_value({e1, e2}, {rat(1, 2), rat(1, 2)}, {0, 0}) == rat(0));
    }
    SUBCASE("vertex shift is 1/b") {
        CHECK(metric_shift_value({e2}, {rat(1)}, {1}) == rat(1, 2));
        CHECK(metric_shift_value({e1}, {rat(1)}, {1}) == rat(1));
    }
    SUBCASE("affine in the cone coordinates") {
        // with b = (1,1): midpoint shift is the average of vertex shifts
        DivisorData u1{"U1", {rat(1)}, 1, rat(0)}, u2{"U2", {rat(-1)}, 1, rat(0)};
        Rational mid = metric_shift_value({u1, u2}, {rat(1, 2), rat(1, 2)}, {3, 7});
        CHECK(mid == rat(5));
    }
}
