#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "univint/approx.hpp"
#include "univint/errors.hpp"
#include "univint/hilbert.hpp"

using namespace univint;

namespace {

Place qplace(long p) { return places_above(FieldCtx::rational(), p)[0]; }

std::vector<Place> sample_places(FieldCtx const& K)
{
    std::vector<Place> Ps;
    for (long p : {2L, 3L, 5L, 7L, 13L})
        for (auto const& P : places_above(K, p)) Ps.push_back(P);
    for (auto const& P : infinite_places(K)) Ps.push_back(P);
    return Ps;
}

}  // namespace

TEST_CASE("local square examples")
{
    auto Q = FieldCtx::rational();
    CHECK(is_local_square(Q, Q.elem(2), qplace(7)));
    CHECK(is_local_square(Q, Q.elem(17), qplace(2)));
    CHECK_FALSE(is_local_square(Q, Q.elem(5), qplace(2)));
    CHECK_FALSE(is_local_square(Q, Q.elem(3), qplace(7)));
    CHECK_THROWS_AS(is_local_square(Q, Q.zero(), qplace(7)), domain_error);
    std::mt19937_64 rng(4);
    for (auto const& K : th::test_fields())
        for (auto const& P : sample_places(K))
            for (int i = 0; i < 20; ++i) {
                auto x = th::random_elem(K, rng, 15);
                CHECK(is_local_square(K, x * x, P));
            }
}

TEST_CASE("dyadic squares against a 2-adic brute force")
{
    // odd x is a square in Q_2 iff x = 1 mod 8
    auto Q = FieldCtx::rational();
    for (long x = -200; x <= 200; ++x) {
        if (x == 0) continue;
        long v = th::vp(x, 2), u = x / th::ipow(2, v);
        bool expect = v % 2 == 0 && ((u % 8) + 8) % 8 == 1;
        CHECK(is_local_square(Q, Q.elem(x), qplace(2)) == expect);
    }
}

TEST_CASE("Hilbert symbol examples")
{
    auto Q = FieldCtx::rational();
    CHECK(hilbert_symbol(Q, Q.elem(2), Q.elem(3), qplace(3)) == -1);
    CHECK(th::conic_oracle_odd(2, 3, 3) == false);
    CHECK(hilbert_symbol(Q, Q.elem(-1), Q.elem(-1), qplace(2)) == -1);
    CHECK(hilbert_symbol(Q, Q.elem(-1), Q.elem(-1), infinite_places(Q)[0]) == -1);
    CHECK(hilbert_symbol(Q, Q.elem(4), Q.elem(-7), qplace(7)) == 1);
    // classical 2-adic values
    CHECK(hilbert_symbol(Q, Q.elem(2), Q.elem(3), qplace(2)) == -1);
    CHECK(hilbert_symbol(Q, Q.elem(2), Q.elem(5), qplace(2)) == -1);
    CHECK(hilbert_symbol(Q, Q.elem(2), Q.elem(7), qplace(2)) == 1);
    CHECK(hilbert_symbol(Q, Q.elem(3), Q.elem(3), qplace(2)) == -1);
    CHECK(hilbert_symbol(Q, Q.elem(5), Q.elem(5), qplace(2)) == 1);
    CHECK_THROWS_AS(hilbert_symbol(Q, Q.zero(), Q.one(), qplace(2)), domain_error);
}

TEST_CASE("Hilbert symbol is bilinear and symmetric")
{
    std::mt19937_64 rng(9);
    for (auto const& K : th::test_fields())
        for (auto const& P : sample_places(K))
            for (int i = 0; i < 40; ++i) {
                auto a1 = th::random_elem(K, rng, 12), a2 = th::random_elem(K, rng, 12), b = th::random_elem(K, rng, 12);
                int s1 = hilbert_symbol(K, a1, b, P), s2 = hilbert_symbol(K, a2, b, P);
                CHECK(hilbert_symbol(K, a1 * a2, b, P) == s1 * s2);
                CHECK(hilbert_symbol(K, b, a1, P) == s1);
                if (is_local_square(K, a1, P)) CHECK(s1 == 1);
            }
}

TEST_CASE("norm-form identities")
{
    for (auto const& K : th::test_fields()) {
        auto Ps = sample_places(K);
        for (auto const& a : enumerate_by_height(K, 4)) {
            if (a.is_zero() || a == K.one()) continue;
            for (auto const& P : Ps) {
                CHECK(hilbert_symbol(K, a, -a, P) == 1);
                CHECK(hilbert_symbol(K, a, K.one() - a, P) == 1);
            }
        }
    }
}

TEST_CASE("dyadic symbol agrees with direct conic search")
{
    std::mt19937_64 rng(21);
    for (auto const& K : th::test_fields())
        for (auto const& P : places_above(K, 2))
            for (int i = 0; i < 25; ++i) {
                auto a = th::random_elem(K, rng, 9), b = th::random_elem(K, rng, 9);
                CHECK(hilbert_symbol(K, a, b, P) == (conic_solvable(K, a, b, P) ? 1 : -1));
            }
}

TEST_CASE("odd-place formula against the brute-force oracle")
{
    auto Q = FieldCtx::rational();
    for (long p : {3L, 5L, 7L, 11L})
        for (long a = -20; a <= 20; ++a)
            for (long b = -20; b <= 20; ++b) {
                if (a == 0 || b == 0) continue;
                int s = hilbert_symbol(Q, Q.elem(a), Q.elem(b), qplace(p));
                CHECK(s == (th::conic_oracle_odd(a, b, p) ? 1 : -1));
            }
}

TEST_CASE("delta sets and reciprocity")
{
    auto Q = FieldCtx::rational();
    auto D = delta_set(Q, Q.elem(-1), Q.elem(-1));
    REQUIRE(D.size() == 2);
    CHECK(D[0].name() == "2");
    CHECK(D[1].name() == "inf");
    CHECK(delta_set(Q, Q.one(), Q.elem(7)).empty());
    CHECK(delta_set(Q, Q.elem(17), Q.elem(73)).size() % 2 == 0);
    CHECK(reciprocity_audit(Q, Q.elem(2), Q.elem(3)).product == 1);
    std::mt19937_64 rng(13);
    for (auto const& K : th::test_fields())
        for (int i = 0; i < 60; ++i) {
            auto a = th::random_elem(K, rng, 20), b = th::random_elem(K, rng, 20);
            CHECK(reciprocity_audit(K, a, b).product == 1);
            CHECK(delta_set(K, a, b).size() % 2 == 0);
        }
}

TEST_CASE("square class representatives")
{
    auto Q = FieldCtx::rational();
    auto r5 = local_class_representatives(Q, qplace(5));
    std::vector<std::string> s5;
    for (auto const& x : r5) s5.push_back(th::str(x));
    CHECK(s5 == std::vector<std::string>{"1", "2", "5", "10"});
    auto r2 = local_class_representatives(Q, qplace(2));
    std::vector<std::string> s2;
    for (auto const& x : r2) s2.push_back(th::str(x));
    CHECK(s2 == std::vector<std::string>{"1", "-1", "2", "-2", "5", "-5", "10", "-10"});
    CHECK(local_class_representatives(Q, infinite_places(Q)[0]).size() == 2);
    for (auto const& K : th::test_fields())
        for (auto const& P : sample_places(K)) {
            auto reps = local_class_representatives(K, P);
            std::size_t expect = P.is_complex() ? 1 : P.is_real() ? 2 : P.is_dyadic() ? (1u << (P.e * P.f + 2)) : 4;
            CHECK(reps.size() == expect);
            for (std::size_t i = 0; i < reps.size(); ++i)
                for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK_FALSE(is_local_square(K, reps[i] * reps[j], P));
        }
}
