#include "reesdiag/dvr_filtration.hpp"
#include "reesdiag/errors.hpp"

#include "snf_oracle.hpp"

#include <doctest.h>

using namespace reesdiag;

namespace {

TruncatedSeries ts(long prec, std::initializer_list<std::pair<long, long>> coeffs) {
    TruncatedSeries s(prec);
    for (auto [k, c] : coeffs) s.set_coeff(k, rat(c));
    return s;
}

SVec sv(long prec, std::initializer_list<TruncatedSeries> es) { return SVec(es); }

SVec unit_vec(int n, int i, long prec) {
    SVec e = svec_zero(n, prec);
    e[static_cast<size_t>(i)] = TruncatedSeries::one(prec);
    return e;
}

// Sheared rank-2 / r=2 fixture: filtrations diagonal in {e1, e2} with ords
// (0,1) and (1,0), but the module carries the basis f1 = e1+e2, f2 = e2,
// so in coordinates nothing is diagonal.
std::vector<DvrFiltration> sheared_fixture(long prec) {
    // e1 = f1 - f2, e2 = f2 in f-coordinates
    SVec e1{ts(prec, {{0, 1}}), ts(prec, {{0, -1}})};
    SVec e2{TruncatedSeries::zero(prec), TruncatedSeries::one(prec)};
    std::vector<SVec> basis{e1, e2};
    auto f1 = DvrFiltration::diagonal_in_basis(basis, {rat(0), rat(1)}, 1, prec);
    auto f2 = DvrFiltration::diagonal_in_basis(basis, {rat(1), rat(0)}, 1, prec);
    return {f1, f2};
}

std::vector<DvrFiltration> three_lines_dvr(long prec) {
    std::vector<QVec> lines{{rat(1), rat(0)}, {rat(0), rat(1)}, {rat(1), rat(1)}};
    std::vector<DvrFiltration> fs;
    for (const auto& line : lines) {
        SVec v = svec_zero(2, prec);
        v[0] = TruncatedSeries(line[0], prec);
        v[1] = TruncatedSeries(line[1], prec);
        Submodule f1 = Submodule::from_generators(2, {v}, 1);
        Submodule f2 = f1.t_scaled(1);
        std::vector<std::pair<Rational, Submodule>> jumps{
            {rat(0), Submodule::full(2)}, {rat(1), f1}, {rat(2), f2}};
        fs.push_back(DvrFiltration::from_jumps(2, 1, jumps, prec));
    }
    return fs;
}

} // namespace

TEST_CASE("submodule canonical form and pivots") {
    long prec = 6;
    SUBCASE("already canonical generators") {
        std::vector<SVec> gens{SVec{ts(prec, {{1, 1}}), TruncatedSeries::zero(prec)},
                               SVec{TruncatedSeries::zero(prec), TruncatedSeries::one(prec)}};
        Submodule u = Submodule::from_generators(2, gens, 3);
        CHECK(u.floor_exponent() == 1);
        CHECK(u.pivot_orders() == std::vector<long>{1, 0});
    }
    SUBCASE("two elimination steps") {
        std::vector<SVec> gens{SVec{TruncatedSeries::one(prec), TruncatedSeries::one(prec)},
                               SVec{TruncatedSeries::one(prec), ts(prec, {{0, 1}, {1, 1}})}};
        Submodule u = Submodule::from_generators(2, gens, 3);
        // canonical {(1,1),(0,t)}
        CHECK(u.pivot_orders() == std::vector<long>{0, 1});
        CHECK(u.contains(SVec{TruncatedSeries::zero(prec), ts(prec, {{1, 1}})}));
        CHECK_FALSE(u.contains(SVec{TruncatedSeries::zero(prec), TruncatedSeries::one(prec)}));
    }
    SUBCASE("floor generators join the span") {
        std::vector<SVec> gens{SVec{ts(prec, {{1, 1}}), ts(prec, {{1, 1}})}};
        Submodule u = Submodule::from_generators(2, gens, 2);
        CHECK(u.floor_exponent() == 2);
        CHECK(u.pivot_orders() == std::vector<long>{1, 2});
        CHECK(u.contains(SVec{ts(prec, {{2, 1}}), TruncatedSeries::zero(prec)}));
    }
    SUBCASE("canonical form is invariant under generator mixing") {
        SplitMix64 rng(31);
        for (int it = 0; it < 20; ++it) {
            int n = 3;
            std::vector<SVec> gens;
            for (int g = 0; g < 2; ++g) {
                SVec v = svec_zero(n, prec);
                for (int j = 0; j < n; ++j)
                    for (long k = 0; k < 3; ++k)
                        if (rng.below(3) == 0)
                            v[static_cast<size_t>(j)].set_coeff(k, rat(rng.range(-2, 2)));
                gens.push_back(std::move(v));
            }
            Submodule a = Submodule::from_generators(n, gens, 3);
            // mixed generators: g0 + t*g1, g1, and a t-multiple
            TruncatedSeries t1 = TruncatedSeries::t_power(1, prec);
            std::vector<SVec> mixed{svec_add(gens[0], svec_scale(gens[1], t1)), gens[1],
                                    svec_t_shift(gens[0], 2)};
            Submodule b = Submodule::from_generators(n, mixed, 3);
            CHECK(a == b);
        }
    }
    SUBCASE("precision guard") {
        std::vector<SVec> gens{SVec{ts(2, {{1, 1}}), TruncatedSeries::zero(2)}};
        CHECK_THROWS_AS(Submodule::from_generators(2, gens, 4), Error);
    }
}

TEST_CASE("module_intersect") {
    long prec = 6;
    Submodule v = Submodule::full(2);
    Submodule tv = Submodule::t_power_full(2, 1);
    CHECK(module_intersect(tv, v) == tv);
    SUBCASE("nontrivial intersection") {
        std::vector<SVec> ga{unit_vec(2, 0, prec), svec_t_shift(unit_vec(2, 1, prec), 1)};
        std::vector<SVec> gb{svec_add(unit_vec(2, 0, prec), unit_vec(2, 1, prec)),
                             svec_t_shift(unit_vec(2, 1, prec), 1)};
        Submodule a = Submodule::from_generators(2, ga, 2);
        Submodule b = Submodule::from_generators(2, gb, 2);
        Submodule i = module_intersect(a, b);
        CHECK(i == tv);
        CHECK(module_intersect(a, a) == a);
    }
}

TEST_CASE("dvr graded tables") {
    SUBCASE("rank-1 trivial filtration") {
        auto f = DvrFiltration::diagonal({rat(0)}, 1, 8);
        auto t = dvr_graded_table({f});
        CHECK(t.total() == 1);
        CHECK(t.entries.count(QVec{rat(0)}) == 1);
    }
    SUBCASE("rank-2 half-integer diagonal") {
        auto f = DvrFiltration::diagonal({rat(0), rat(1, 2)}, 2, 8);
        auto t = dvr_graded_table({f});
        CHECK(t.total() == 2);
        CHECK(t.entries.count(QVec{rat(0)}) == 1);
        CHECK(t.entries.count(QVec{rat(1, 2)}) == 1);
    }
    SUBCASE("sheared r=2 fixture has gr at (0,1) and (1,0)") {
        auto fs = sheared_fixture(8);
        auto t = dvr_graded_table(fs);
        CHECK(t.total() == 2);
        CHECK(t.entries.count(QVec{rat(0), rat(1)}) == 1);
        CHECK(t.entries.count(QVec{rat(1), rat(0)}) == 1);
    }
}

TEST_CASE("diagonalize_dvr") {
    SUBCASE("sheared fixture diagonalizes with ord multiset {0,1}") {
        auto fs = sheared_fixture(8);
        auto r = diagonalize_dvr(fs);
        REQUIRE(r.success);
        CHECK(verify_diagonalizes_dvr(r.basis.vectors, r.basis.ord_vectors, fs));
        std::vector<QVec> ords = r.basis.ord_vectors;
        std::sort(ords.begin(), ords.end(), QVecLess{});
        CHECK(ords == std::vector<QVec>{{rat(0), rat(1)}, {rat(1), rat(0)}});
    }
    SUBCASE("three-lines residue data obstructs") {
        auto fs = three_lines_dvr(8);
        auto r = diagonalize_dvr(fs);
        CHECK_FALSE(r.success);
        CHECK(r.table.total() == 3);
    }
    SUBCASE("ord recomputation matches the table keys") {
        auto fs = sheared_fixture(8);
        auto r = diagonalize_dvr(fs);
        REQUIRE(r.success);
        for (size_t k = 0; k < r.basis.vectors.size(); ++k)
            for (size_t fi = 0; fi < fs.size(); ++fi) {
                OrdValue o = ord_dvr(fs[fi], r.basis.vectors[k]);
                CHECK_FALSE(o.infinite);
                CHECK(o.value == r.basis.ord_vectors[k][fi]);
            }
    }
}

TEST_CASE("condition (5) machine check") {
    auto fs = sheared_fixture(6);
    for (const auto& f : fs) CHECK(f.check_condition5());
    // corrupt one jump by a t-shift (bypasses validation)
    auto f = DvrFiltration::diagonal({rat(0), rat(1)}, 1, 6);
    std::vector<std::pair<Rational, Submodule>> jumps = f.jumps();
    jumps[1].second = jumps[1].second.t_scaled(1);
    // rebuild unvalidated: decreasingness still holds but (5) fails
    auto corrupt = DvrFiltration::from_jumps(2, 1, jumps, 6, /*validate=*/false);
    CHECK_FALSE(corrupt.check_condition5());
}

TEST_CASE("r=1 diagonalization matches the SNF oracle") {
    SplitMix64 rng(77);
    long prec = 8;
    for (int it = 0; it < 25; ++it) {
        int n = 2 + static_cast<int>(rng.below(3)); // 2..4
        auto basis = testing::random_unimodular_basis(rng, n, prec);
        QVec ords;
        for (int i = 0; i < n; ++i) ords.push_back(rat(rng.range(0, 3)));
        auto f = DvrFiltration::diagonal_in_basis(basis, ords, 1, prec);
        auto r = diagonalize_dvr({f});
        REQUIRE(r.success);
        // check at every stored jump: planted exponents == SNF of the step
        for (const auto& [l, w] : f.jumps()) {
            std::vector<long> predicted;
            for (const auto& ov : r.basis.ord_vectors)
                predicted.push_back(std::max<long>(0, rational_ceil(l - ov[0])));
            std::sort(predicted.begin(), predicted.end());
            std::vector<SVec> gens;
            for (const auto& row : w.hermite_rows()) gens.push_back(row);
            auto snf = testing::snf_exponents(gens, n, w.floor_exponent());
            // SNF exponents are capped at the floor; so is the prediction
            for (auto& e : predicted) e = std::min(e, w.floor_exponent());
            CHECK(predicted == snf);
        }
    }
}

TEST_CASE("rees_quotient_check") {
    SUBCASE("rank-1 trivial") {
        auto f = DvrFiltration::diagonal({rat(0)}, 1, 8);
        CHECK(rees_quotient_check({f}, 1, {{0}, {1}, {2}, {-1}}));
    }
    SUBCASE("diagonal rank-2 full grid, d=2") {
        auto f1 = DvrFiltration::diagonal({rat(0), rat(1, 2)}, 2, 8);
        auto f2 = DvrFiltration::diagonal({rat(1, 2), rat(1)}, 2, 8);
        std::vector<std::vector<long>> samples;
        for (long a = -1; a <= 4; ++a)
            for (long b = -1; b <= 4; ++b) samples.push_back({a, b});
        CHECK(rees_quotient_check({f1, f2}, 2, samples));
    }
    SUBCASE("corrupted jump data fails") {
        auto f = DvrFiltration::diagonal({rat(0), rat(1)}, 1, 6);
        auto jumps = f.jumps();
        jumps[1].second = jumps[1].second.t_scaled(1);
        auto corrupt = DvrFiltration::from_jumps(2, 1, jumps, 6, /*validate=*/false);
        CHECK_FALSE(rees_quotient_check({corrupt}, 1, {{0}, {1}}));
    }
}

TEST_CASE("filtration rescale divides ord values exactly") {
    // lambda -> lambda/d reindexing: realized by shifting... here we check
    // the d-grid behaviour of a diagonal filtration directly.
    auto f = DvrFiltration::diagonal({rat(1, 2), rat(3, 2)}, 2, 8);
    SVec e1 = unit_vec(2, 0, 8), e2 = unit_vec(2, 1, 8);
    CHECK(ord_dvr(f, e1).value == rat(1, 2));
    CHECK(ord_dvr(f, e2).value == rat(3, 2));
    CHECK(ord_dvr(f, svec_t_shift(e1, 1)).value == rat(3, 2));
}

TEST_CASE("metric shift of a filtration") {
    auto f = DvrFiltration::diagonal({rat(0), rat(1)}, 1, 8);
    auto g = f.shifted(rat(1, 2));
    SVec e2 = unit_vec(2, 1, 8);
    CHECK(ord_dvr(g, e2).value == rat(3, 2));
    CHECK(g.check_condition5());
}
