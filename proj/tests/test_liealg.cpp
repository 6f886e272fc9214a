#include <doctest.h>

#include <random>

#include "projdense/liealg.hpp"

using namespace projdense;

namespace {

RVector rv(std::vector<long> xs, int n) {
    RVector v(static_cast<size_t>(n), Rational(0));
    for (size_t i = 0; i < xs.size(); ++i) v[i] = Rational(xs[i]);
    return v;
}

RVector random_rv(int n, std::mt19937_64& rng) {
    RVector v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = Rational(static_cast<int>(rng() % 11) - 5);
    return v;
}

// change of basis: structure constants of L in the basis given by the rows
// of an invertible rational matrix m
LieAlgebra change_basis(const LieAlgebra& L, const std::vector<RVector>& m,
                        const std::vector<RVector>& m_inv) {
    const int n = L.dim();
    std::vector<std::vector<RVector>> z(
        static_cast<size_t>(n),
        std::vector<RVector>(static_cast<size_t>(n), RVector(static_cast<size_t>(n), Rational(0))));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RVector br = L.bracket(m[static_cast<size_t>(i)], m[static_cast<size_t>(j)]);
            // express br in the new basis: coords = br * m_inv
            for (int k = 0; k < n; ++k) {
                Rational s = 0;
                for (int l = 0; l < n; ++l)
                    s += br[static_cast<size_t>(l)] * m_inv[static_cast<size_t>(l)][static_cast<size_t>(k)];
                z[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] = s;
            }
        }
    return LieAlgebra(n, z);
}

}  // namespace

TEST_CASE("sl2 brackets behave like (e, h, f)") {
    auto L = LieAlgebra::sl2();
    RVector e = rv({1, 0, 0}, 3), h = rv({0, 1, 0}, 3), f = rv({0, 0, 1}, 3);
    CHECK(L.bracket(e, f) == h);
    CHECK(L.bracket(h, e) == rv({2, 0, 0}, 3));
    CHECK(L.bracket(h, f) == rv({0, 0, -2}, 3));
    CHECK(L.bracket(e, e) == rv({}, 3));  // [x,x] = 0
    RVector x = rv({3, -1, 2}, 3);
    CHECK(L.bracket(x, x) == rv({}, 3));
    CHECK_THROWS_AS(L.bracket(rv({}, 2), e), std::invalid_argument);
}

TEST_CASE("abelian algebras have vanishing brackets") {
    auto A = LieAlgebra::abelian(3);
    CHECK(A.bracket(rv({1, 2, 3}, 3), rv({-1, 5, 0}, 3)) == rv({}, 3));
}

TEST_CASE("generated subalgebra of {e, f} is all of sl2") {
    auto L = LieAlgebra::sl2();
    auto basis = generated_subalgebra(L, {rv({1, 0, 0}, 3), rv({0, 0, 1}, 3)});
    CHECK(basis.size() == 3);
    CHECK(generates(L, {rv({1, 0, 0}, 3), rv({0, 0, 1}, 3)}));
    // a single element only spans itself
    CHECK(generated_subalgebra(L, {rv({1, 0, 0}, 3)}).size() == 1);
    CHECK_THROWS_AS(generated_subalgebra(L, {}), std::invalid_argument);
}

TEST_CASE("sl2 + R^3 is not 2-generated: random pairs stay below dimension 6") {
    auto L = LieAlgebra::direct_sum(LieAlgebra::sl2(), LieAlgebra::abelian(3));
    REQUIRE(L.dim() == 6);
    std::mt19937_64 rng(606);
    for (int it = 0; it < 1000; ++it) {
        auto s = generated_subalgebra(L, {random_rv(6, rng), random_rv(6, rng)});
        CHECK(s.size() <= 5);
        CHECK(!generates(L, {random_rv(6, rng), random_rv(6, rng)}));
    }
}

TEST_CASE("sl2 + R is 2-generated by e+1 and f") {
    auto L = LieAlgebra::direct_sum(LieAlgebra::sl2(), LieAlgebra::abelian(1));
    REQUIRE(L.dim() == 4);
    CHECK(generates(L, {rv({1, 0, 0, 1}, 4), rv({0, 0, 1, 0}, 4)}));
    // but not by elements with zero abelian component
    CHECK(!generates(L, {rv({1, 0, 0, 0}, 4), rv({0, 0, 1, 0}, 4)}));
}

TEST_CASE("abelianization dimensions") {
    CHECK(abelianization_dim(LieAlgebra::sl2()) == 0);
    CHECK(abelianization_dim(LieAlgebra::abelian(3)) == 3);
    auto L = LieAlgebra::direct_sum(LieAlgebra::sl2(), LieAlgebra::abelian(3));
    CHECK(abelianization_dim(L) == 3);
}

TEST_CASE("min_generators_bound settles the three canonical algebras") {
    auto L1 = LieAlgebra::direct_sum(LieAlgebra::sl2(), LieAlgebra::abelian(3));
    auto r1 = min_generators_bound(L1, 50, 1);
    CHECK(r1.lower == 3);
    CHECK(r1.upper == 3);
    CHECK(generates(L1, r1.witness));

    auto r2 = min_generators_bound(LieAlgebra::sl2(), 50, 2);
    CHECK(r2.lower == 2);
    CHECK(r2.upper == 2);
    CHECK(generates(LieAlgebra::sl2(), r2.witness));

    auto r3 = min_generators_bound(LieAlgebra::abelian(4), 50, 3);
    CHECK(r3.lower == 4);
    CHECK(r3.upper == 4);

    CHECK_THROWS_AS(min_generators_bound(LieAlgebra::sl2(), 0, 1), std::invalid_argument);
}

TEST_CASE("generated_subalgebra is monotone and idempotent") {
    auto L = LieAlgebra::direct_sum(LieAlgebra::sl2(), LieAlgebra::abelian(2));
    std::mt19937_64 rng(17);
    for (int it = 0; it < 50; ++it) {
        std::vector<RVector> s1 = {random_rv(5, rng)};
        std::vector<RVector> s2 = s1;
        s2.push_back(random_rv(5, rng));
        auto b1 = generated_subalgebra(L, s1);
        auto b2 = generated_subalgebra(L, s2);
        CHECK(b1.size() <= b2.size());
        // every element of b1 lies in the span of b2
        RationalRowSpace sp(5);
        for (const auto& v : b2) sp.insert(v);
        for (const auto& v : b1) CHECK(sp.contains(v));
        // idempotence
        auto b3 = generated_subalgebra(L, b1);
        CHECK(b3.size() == b1.size());
    }
}

TEST_CASE("generates is invariant under rational change of basis") {
    auto L = LieAlgebra::direct_sum(LieAlgebra::sl2(), LieAlgebra::abelian(1));
    // unimodular basis change m with inverse m_inv (verified below)
    std::vector<RVector> m = {rv({1, 1, 0, 0}, 4), rv({0, 1, 0, 0}, 4), rv({0, 2, 1, 0}, 4),
                              rv({0, 0, 1, 1}, 4)};
    std::vector<RVector> m_inv = {rv({1, -1, 0, 0}, 4), rv({0, 1, 0, 0}, 4),
                                  rv({0, -2, 1, 0}, 4), rv({0, 2, -1, 1}, 4)};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            Rational s = 0;
            for (int l = 0; l < 4; ++l)
                s += m[static_cast<size_t>(i)][static_cast<size_t>(l)] *
                     m_inv[static_cast<size_t>(l)][static_cast<size_t>(k)];
            REQUIRE(s == (i == k ? 1 : 0));
        }
    auto Lb = change_basis(L, m, m_inv);
    std::mt19937_64 rng(23);
    for (int it = 0; it < 50; ++it) {
        RVector x = random_rv(4, rng), y = random_rv(4, rng);
        // coordinates transform by m_inv when the basis transforms by m
        auto to_new = [&](const RVector& v) {
            RVector w(4, Rational(0));
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    w[static_cast<size_t>(k)] += v[static_cast<size_t>(l)] *
                                                 m_inv[static_cast<size_t>(l)][static_cast<size_t>(k)];
            return w;
        };
        CHECK(generates(L, {x, y}) == generates(Lb, {to_new(x), to_new(y)}));
    }
}

TEST_CASE("abelianization obstruction: k generators give rank <= k mod [L,L]") {
    auto L = LieAlgebra::direct_sum(LieAlgebra::sl2(), LieAlgebra::abelian(3));
    std::mt19937_64 rng(29);
    // derived subalgebra of sl2 + R^3 is the sl2 block: abelianization is the
    // last 3 coordinates
    for (int it = 0; it < 100; ++it) {
        int k = 1 + static_cast<int>(rng() % 3);
        std::vector<RVector> s;
        for (int i = 0; i < k; ++i) s.push_back(random_rv(6, rng));
        auto basis = generated_subalgebra(L, s);
        RationalRowSpace image(3);
        for (const auto& v : basis)
            image.insert({v[3], v[4], v[5]});
        CHECK(image.dim() <= k);
    }
}

TEST_CASE("validation rejects malformed or mutated structure constants") {
    // wrong shape
    CHECK_THROWS_AS(LieAlgebra(2, {}), std::invalid_argument);
    // break antisymmetry on sl2: set c[2][0] = c[0][2]
    auto bad_anti = std::vector<std::vector<RVector>>(
        3, std::vector<RVector>(3, RVector(3, Rational(0))));
    bad_anti[0][2] = {Rational(0), Rational(1), Rational(0)};
    bad_anti[2][0] = {Rational(0), Rational(1), Rational(0)};
    CHECK_THROWS_AS(LieAlgebra(3, bad_anti), std::invalid_argument);
    // break Jacobi: flip the sign of [h,f] only
    auto bad_jac = std::vector<std::vector<RVector>>(
        3, std::vector<RVector>(3, RVector(3, Rational(0))));
    bad_jac[0][2] = {Rational(0), Rational(1), Rational(0)};
    bad_jac[2][0] = {Rational(0), Rational(-1), Rational(0)};
    bad_jac[1][0] = {Rational(2), Rational(0), Rational(0)};
    bad_jac[0][1] = {Rational(-2), Rational(0), Rational(0)};
    bad_jac[1][2] = {Rational(0), Rational(0), Rational(2)};
    bad_jac[2][1] = {Rational(0), Rational(0), Rational(-2)};
    CHECK_THROWS_AS(LieAlgebra(3, bad_jac), std::invalid_argument);
}
