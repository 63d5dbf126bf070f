#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "univint/errors.hpp"
#include "univint/ideal.hpp"

using namespace univint;

TEST_CASE("principal ideals multiply")
{
    std::mt19937_64 rng(2);
    for (auto const& K : th::test_fields())
        for (int i = 0; i < 100; ++i) {
            auto x = th::random_elem(K, rng, 12), y = th::random_elem(K, rng, 12);
            auto Ix = Ideal::principal(K, x), Iy = Ideal::principal(K, y);
            CHECK(Ix * Iy == Ideal::principal(K, x * y));
            CHECK((Ix * Iy).norm() == abs((x * y).norm()));
            CHECK(Ix.contains(x));
            if (!K.is_rational()) CHECK(Ix.contains(x * K.omega()));
            CHECK(Ideal::from_factorization(K, Ix.factor(K)) == Ix);
            CHECK(Ix * Ix.inverse() == Ideal::unit(K));
            auto g = is_principal(K, Ix);
            REQUIRE(g);
            CHECK(Ideal::principal(K, *g) == Ix);
            auto gxy = is_principal(K, Ix * Iy);
            REQUIRE(gxy);
            CHECK(Ideal::principal(K, *gxy) == Ideal::principal(K, x * y));
        }
}

TEST_CASE("prime ideals")
{
    for (auto const& K : th::test_fields())
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
            Ideal prod = Ideal::unit(K);
            for (auto const& P : places_above(K, p)) {
                auto I = Ideal::prime(K, P);
                CHECK(I.norm() == Rat(P.norm()));
                CHECK(I.valuation(K, P) == 1);
                prod = prod * I.pow(P.e);
            }
            CHECK(prod == Ideal::principal(K, K.elem(p)));
        }
}

TEST_CASE("class numbers")
{
    CHECK(class_group(FieldCtx::rational()).size() == 1);
    CHECK(class_group(FieldCtx::quadratic(-1)).size() == 1);
    CHECK(class_group(FieldCtx::quadratic(-5)).size() == 2);
    CHECK(class_group(FieldCtx::quadratic(5)).size() == 1);
    CHECK(class_group(FieldCtx::quadratic(-23)).size() == 3);
    CHECK(class_group(FieldCtx::quadratic(10)).size() == 2);
    CHECK(class_group(FieldCtx::quadratic(-14)).size() == 4);
    CHECK(class_group(FieldCtx::quadratic(79)).size() == 3);
}

TEST_CASE("nonprincipal ideal in Q(sqrt -5)")
{
    auto K = FieldCtx::quadratic(-5);
    auto I = Ideal::generated(K, {K.elem(2), K.elem(1, 1)});
    CHECK(I.norm() == 2);
    // x^2 + 5y^2 = 2 has no integer solution
    bool any = false;
    for (int x = -2; x <= 2; ++x)
        for (int y = -1; y <= 1; ++y)
            if (x * x + 5 * y * y == 2) any = true;
    CHECK_FALSE(any);
    CHECK_FALSE(is_principal(K, I));
    CHECK(is_principal(K, I * I));
    CHECK(class_index(K, I) == 1);
    CHECK(class_index(K, I.conj()) == 1);
}

TEST_CASE("class index is multiplicative in Q(sqrt -5)")
{
    auto K = FieldCtx::quadratic(-5);
    std::vector<Ideal> primes;
    for (long p : {2L, 3L, 5L, 7L, 23L, 29L, 41L})
        for (auto const& P : places_above(K, p)) primes.push_back(Ideal::prime(K, P));
    for (auto const& I : primes)
        for (auto const& J : primes) CHECK(class_index(K, I * J) == (class_index(K, I) ^ class_index(K, J)));
}
