#ifndef UNIVINT_APPROX_HPP
#define UNIVINT_APPROX_HPP

#include <functional>
#include <utility>
#include <vector>

#include "univint/place.hpp"

namespace univint {

/* v_P(x - target) >= precision. */
struct Congruence {
    Place place;
    NfElem target;
    int precision = 1;
};

struct ApproxProblem {
    std::vector<std::pair<Place, int>> valuations;  // v_P(x) = k
    std::vector<Congruence> congruences;
    std::vector<std::pair<Place, int>> signs;  // real place, +1/-1
    bool integral_outside = true;

    ApproxProblem& val(Place const& P, int k)
    {
        valuations.emplace_back(P, k);
        return *this;
    }
    ApproxProblem& cong(Place const& P, NfElem const& t, int n = 1)
    {
        congruences.push_back({P, t, n});
        return *this;
    }
    ApproxProblem& sign(Place const& P, int s)
    {
        signs.emplace_back(P, s);
        return *this;
    }
};

/* CRT on prime powers plus sign correction; the result is re-verified
 * against the problem before it is returned. The output is integral away
 * from the listed places (and at listed places where the targets allow). */
NfElem weak_approx(FieldCtx const& K, ApproxProblem const& prob);

/* Checks every constraint of prob on x; optionally integrality elsewhere. */
bool satisfies(FieldCtx const& K, ApproxProblem const& prob, NfElem const& x);

/* All (a + b*w)/c with |a|, |b|, c <= H and gcd(a, b, c) = 1, in a fixed order
 * (c ascending, then a, then b). For Q, b = 0. */
void for_each_by_height(FieldCtx const& K, long H, std::function<void(NfElem const&)> const& fn);
std::vector<NfElem> enumerate_by_height(FieldCtx const& K, long H);

}  // namespace univint

#endif
