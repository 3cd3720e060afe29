#include "reesdiag/qlinalg.hpp"
#include "reesdiag/subspace.hpp"

#include <doctest.h>

using namespace reesdiag;

namespace {

QVec qv(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(rat(x));
    return v;
}

} // namespace

TEST_CASE("rref and rank") {
    QMatrix m{qv({1, 2, 3}), qv({2, 4, 6}), qv({0, 1, 1})};
    CHECK(rank(m) == 2);
    auto piv = rref(m);
    CHECK(piv == std::vector<int>{0, 1});
    CHECK(m.size() == 2);
    CHECK(m[0] == qv({1, 0, 1}));
    CHECK(m[1] == qv({0, 1, 1}));
}

TEST_CASE("kernel") {
    QMatrix m{qv({1, 1, 0}), qv({0, 1, 1})};
    QMatrix k = kernel(m, 3);
    REQUIRE(k.size() == 1);
    // kernel is spanned by (1, -1, 1)
    CHECK(k[0][0] * rat(-1) == k[0][1]);
    CHECK(k[0][0] == k[0][2]);
}

TEST_CASE("solve_in_span") {
    QMatrix rows{qv({1, 0, 1}), qv({0, 1, 1})};
    QVec coeffs;
    CHECK(solve_in_span(rows, qv({2, 3, 5}), &coeffs));
    CHECK(coeffs == qv({2, 3}));
    CHECK_FALSE(solve_in_span(rows, qv({0, 0, 1}), nullptr));
}

TEST_CASE("subspace algebra") {
    auto L1 = Subspace::span(2, {qv({1, 0})});
    auto L2 = Subspace::span(2, {qv({0, 1})});
    auto L3 = Subspace::span(2, {qv({1, 1})});
    CHECK(intersect(L1, L2) == Subspace::zero(2));
    CHECK(intersect(L1, L1) == L1);
    CHECK((L1 + L2) == Subspace::full(2));
    CHECK((L1 + L3) == Subspace::full(2));
    CHECK(L1.contains(qv({5, 0})));
    CHECK_FALSE(L1.contains(qv({5, 1})));

    // canonical form: span of (2,2) equals span of (1,1)
    CHECK(Subspace::span(2, {qv({2, 2})}) == L3);
}

TEST_CASE("extend_to is deterministic and spans") {
    auto inner = Subspace::span(3, {qv({1, 1, 0})});
    auto outer = Subspace::full(3);
    QMatrix ext = inner.extend_to(outer);
    CHECK(ext.size() == 2);
    QMatrix all = inner.basis();
    all.insert(all.end(), ext.begin(), ext.end());
    CHECK(rank(all) == 3);
}

TEST_CASE("intersection respects containment on random spans") {
    SplitMix64 rng(11);
    for (int it = 0; it < 30; ++it) {
        int n = 4;
        QMatrix a, b;
        for (int i = 0; i < 2; ++i) {
            QVec v(n), w(n);
            for (int j = 0; j < n; ++j) {
                v[static_cast<size_t>(j)] = rat(rng.range(-2, 2));
                w[static_cast<size_t>(j)] = rat(rng.range(-2, 2));
            }
            a.push_back(v);
            b.push_back(w);
        }
        auto A = Subspace::span(n, a), B = Subspace::span(n, b);
        auto I = intersect(A, B);
        CHECK(A.contains(I));
        CHECK(B.contains(I));
        CHECK((I + A) == A);
        // modular bound: dim(A+B) + dim(A∩B) = dim A + dim B
        CHECK((A + B).dim() + I.dim() == A.dim() + B.dim());
    }
}
