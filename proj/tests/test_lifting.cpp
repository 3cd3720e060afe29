#include "reesdiag/errors.hpp"
#include "reesdiag/lifting.hpp"

#include <doctest.h>

using namespace reesdiag;

namespace {

TruncatedSeries ts(long prec, std::initializer_list<std::pair<long, long>> coeffs) {
    TruncatedSeries s(prec);
    for (auto [k, c] : coeffs) s.set_coeff(k, rat(c));
    return s;
}

std::vector<DvrFiltration> sheared_fixture(long prec) {
    SVec e1{ts(prec, {{0, 1}}), ts(prec, {{0, -1}})};
    SVec e2{TruncatedSeries::zero(prec), TruncatedSeries::one(prec)};
    std::vector<SVec> basis{e1, e2};
    auto f1 = DvrFiltration::diagonal_in_basis(basis, {rat(0), rat(1)}, 1, prec);
    auto f2 = DvrFiltration::diagonal_in_basis(basis, {rat(1), rat(0)}, 1, prec);
    return {f1, f2};
}

} // namespace

TEST_CASE("constraint_matrix examples") {
    SUBCASE("all orders equal: full GL") {
        auto c = constraint_matrix({{rat(1)}, {rat(1)}});
        CHECK(c == std::vector<std::vector<long>>{{0, 0}, {0, 0}});
    }
    SUBCASE("r=1 orders (0,1)") {
        auto c = constraint_matrix({{rat(0)}, {rat(1)}});
        CHECK(c == std::vector<std::vector<long>>{{0, 1}, {0, 0}});
    }
    SUBCASE("r=2 crossing orders") {
        auto c = constraint_matrix({{rat(0), rat(1)}, {rat(1), rat(0)}});
        CHECK(c == std::vector<std::vector<long>>{{0, 1}, {1, 0}});
    }
}

TEST_CASE("diagonalize_mod") {
    auto fs = sheared_fixture(8);
    SUBCASE("level 1 equals the residue problem") {
        auto b = diagonalize_mod(fs, 1);
        CHECK(b.level == 1);
        CHECK(b.vectors.size() == 2);
    }
    SUBCASE("mid level verifies") {
        auto b = diagonalize_mod(fs, 4);
        std::vector<DvrFiltration> reduced;
        for (const auto& f : fs) reduced.push_back(f.reduced_mod(4));
        CHECK(verify_diagonalizes_dvr(b.vectors, b.ord_vectors, reduced));
    }
}

TEST_CASE("torsor transfer on a compatible pair returns the next basis") {
    auto fs = sheared_fixture(8);
    auto full = diagonalize_dvr(fs);
    REQUIRE(full.success);
    // reductions of one fixed basis are compatible by construction
    auto reduce_basis = [&](long level) {
        ModBasis b;
        b.level = level;
        for (const auto& v : full.basis.vectors) {
            SVec w;
            for (const auto& e : v) w.push_back(e.truncated(level));
            b.vectors.push_back(std::move(w));
        }
        b.ord_vectors = full.basis.ord_vectors;
        return b;
    };
    auto b2 = reduce_basis(2);
    auto c3 = reduce_basis(3);
    auto constraints = constraint_matrix(c3.ord_vectors);
    auto lifted = torsor_transfer(fs, b2, c3, constraints);
    CHECK(lifted.level == 3);
    for (size_t k = 0; k < lifted.vectors.size(); ++k)
        for (size_t j = 0; j < lifted.vectors[k].size(); ++j)
            CHECK(lifted.vectors[k][j] == c3.vectors[k][j]);
}

TEST_CASE("lift_chain with independently recomputed bases") {
    auto fs = sheared_fixture(8);
    long target = 8;
    // different seed per level: the per-level bases are genuinely unrelated
    auto oracle = [&](long level) { return diagonalize_mod(fs, level, 1000 + 7 * level); };
    ModBasis chain = lift_chain(fs, oracle, target);
    CHECK(chain.level == target);
    for (long i = 1; i <= target; ++i) {
        std::vector<DvrFiltration> reduced;
        for (const auto& f : fs) reduced.push_back(f.reduced_mod(i));
        std::vector<SVec> trunc;
        for (const auto& v : chain.vectors) {
            SVec w;
            for (const auto& e : v) w.push_back(e.truncated(i));
            trunc.push_back(std::move(w));
        }
        std::vector<QVec> ords;
        for (const auto& v : trunc) {
            QVec o;
            for (const auto& f : reduced) o.push_back(ord_dvr(f, v).value);
            ords.push_back(std::move(o));
        }
        CHECK(verify_diagonalizes_dvr(trunc, ords, reduced));
    }
}

TEST_CASE("lift_chain N=1 returns oracle(1)") {
    auto fs = sheared_fixture(4);
    auto oracle = [&](long level) { return diagonalize_mod(fs, level); };
    auto b = lift_chain(fs, oracle, 1);
    CHECK(b.level == 1);
}

TEST_CASE("torsor transfer rejects mismatched filtration data") {
    auto fs = sheared_fixture(6);
    auto other = std::vector<DvrFiltration>{DvrFiltration::diagonal({rat(0), rat(2)}, 1, 6),
                                            DvrFiltration::diagonal({rat(2), rat(0)}, 1, 6)};
    auto b2 = diagonalize_mod(fs, 2);
    auto c3 = diagonalize_mod(other, 3);
    auto constraints = constraint_matrix(c3.ord_vectors);
    CHECK_THROWS_AS(torsor_transfer(fs, b2, c3, constraints), Error);
}
