#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "univint/errors.hpp"
#include "univint/prescription.hpp"

using namespace univint;

namespace {

// eps_{i,v} = (a_i, x)_v for a hidden x: admissible by construction
Prescription from_hidden(FieldCtx const& K, std::vector<NfElem> const& family, NfElem const& x)
{
    Prescription p;
    p.family = family;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (auto const& v : candidate_places(K, family[i], x)) p.set(i, v, hilbert_symbol(K, family[i], x, v));
    return p;
}

}  // namespace

TEST_CASE("prescription examples")
{
    auto Q = FieldCtx::rational();
    Prescription p;
    p.family = {Q.elem(-1)};
    auto rep = check_conditions(Q, p);
    CHECK(rep.ok());
    auto c = solve(Q, p);
    CHECK(c.x == Q.one());

    p.set(0, parse_place(Q, "2"), -1);
    rep = check_conditions(Q, p);
    CHECK(rep.violates(2));
    CHECK_FALSE(rep.violates(3));
    CHECK_THROWS_AS(solve(Q, p), domain_error);

    p.set(0, parse_place(Q, "inf"), -1);
    rep = check_conditions(Q, p);
    CHECK(rep.ok());
    CHECK(rep.local.size() == 2);
    c = solve(Q, p);
    CHECK(verify_solution(Q, p, c.x));
    CHECK(verify_solution(Q, p, Q.elem(-1)));
    CHECK_FALSE(verify_solution(Q, p, Q.elem(3)));

    // the symbols of x = 3: (5,3) is -1 at 3 and 5, (11,3) is -1 at 3 and 2
    Prescription q;
    q.family = {Q.elem(5), Q.elem(11)};
    q.set(0, parse_place(Q, "3"), -1);
    q.set(0, parse_place(Q, "5"), -1);
    q.set(1, parse_place(Q, "3"), -1);
    q.set(1, parse_place(Q, "2"), -1);
    rep = check_conditions(Q, q);
    CHECK(rep.ok());
    c = solve(Q, q);
    CHECK(verify_solution(Q, q, c.x));

    // a column no local element realizes: (1, x)_v = -1 is impossible
    Prescription r;
    r.family = {Q.elem(4)};
    r.set(0, parse_place(Q, "3"), -1);
    r.set(0, parse_place(Q, "5"), -1);
    rep = check_conditions(Q, r);
    CHECK(rep.violates(3));
    CHECK_FALSE(rep.violates(2));
    CHECK(rep.violations.size() == 2);

    auto K = FieldCtx::quadratic(-1);
    Prescription s;
    s.family = {K.elem(3)};
    s.set(0, parse_place(K, "complex"), -1);
    s.set(0, parse_place(K, "(3)"), -1);
    CHECK(check_conditions(K, s).violates(3));
}

TEST_CASE("prescription text round trip")
{
    auto K = FieldCtx::quadratic(-5);
    Prescription p;
    p.family = {K.elem(-1), K.elem(3, 1)};
    p.set(1, parse_place(K, "(7, w - 3)"), -1);
    p.set(1, parse_place(K, "(2, w - 1)"), -1);
    auto text = p.serialize();
    auto back = Prescription::parse(K, text);
    CHECK(back.serialize() == text);
    CHECK(back.family == p.family);
    CHECK_THROWS_AS(Prescription::parse(K, "a_2 := 3\n"), domain_error);
    CHECK_THROWS_AS(Prescription::parse(K, "a_1 := 3\n(2, (3)) = -1\n"), domain_error);
}

TEST_CASE("random admissible prescriptions are solved")
{
    std::mt19937_64 rng(21);
    for (auto const& K : th::test_fields()) {
        CAPTURE(K.spec());
        for (int k = 0; k < 8; ++k) {
            std::vector<NfElem> fam;
            int rows = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < rows; ++i) fam.push_back(th::random_elem(K, rng, 12));
            auto p = from_hidden(K, fam, th::random_elem(K, rng, 12));
            CAPTURE(p.serialize());
            REQUIRE(check_conditions(K, p).ok());
            auto c = solve(K, p, {20000, static_cast<std::uint64_t>(k)});
            CHECK(verify_solution(K, p, c.x));
            for (auto const& [i, v, s] : c.table) CHECK(s == p.target(i, v));
            // reciprocity closure of every row
            for (std::size_t i = 0; i < fam.size(); ++i) {
                int prod = 1;
                for (auto const& [j, v, s] : c.table)
                    if (j == i) prod *= s;
                CHECK(prod == 1);
            }
        }
    }
}

TEST_CASE("single flips are caught")
{
    std::mt19937_64 rng(8);
    auto Q = FieldCtx::rational();
    for (int k = 0; k < 20; ++k) {
        std::vector<NfElem> fam{th::random_elem(Q, rng, 15), th::random_elem(Q, rng, 15)};
        auto p = from_hidden(Q, fam, th::random_elem(Q, rng, 15));
        PlaceSet places = candidate_places(Q, fam[0], fam[1]);
        places.push_back(parse_place(Q, "3"));
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (auto const& v : places) {
                Prescription m = p;
                m.set(i, v, -p.target(i, v));
                auto rep = check_conditions(Q, m);
                CHECK(rep.violates(2));
            }
    }
}
