#include "univint/trace_sets.hpp"

#include <algorithm>

#include "univint/approx.hpp"
#include "univint/errors.hpp"

namespace univint {

bool USet::contains(FiniteField::Elem const& s) const
{
    return std::find(members.begin(), members.end(), s) != members.end();
}

std::string USet::to_string() const
{
    std::string out;
    for (auto const& m : members) {
        if (!out.empty()) out += ' ';
        out += field.to_string(m);
    }
    return out;
}

USet u_set(FiniteField const& F)
{
    USet U{F, {}};
    auto elems = F.elements();
    auto four = F.from_int(4);
    for (auto const& s : elems) {
        bool irreducible;
        if (F.p() != 2) {
            irreducible = !F.is_square(F.sub(F.mul(s, s), four));
        } else {
            irreducible = true;
            for (auto const& x : elems)
                if (F.is_zero(F.add(F.sub(F.mul(x, x), F.mul(s, x)), F.one()))) {
                    irreducible = false;
                    break;
                }
        }
        if (irreducible) U.members.push_back(s);
    }
    return U;
}

USet u_set(std::int64_t q) { return u_set(FiniteField::standard(q)); }

bool sumset_covers(FiniteField const& F, std::vector<FiniteField::Elem> const& A,
                   std::vector<FiniteField::Elem> const& B)
{
    std::vector<char> hit(static_cast<std::size_t>(F.size()), 0);
    for (auto const& x : A)
        for (auto const& y : B) hit[F.index(F.add(x, y))] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool sumset_check(std::int64_t q)
{
    auto U = u_set(q);
    auto const& F = U.field;
    if (q > 11) return sumset_covers(F, U.members, U.members);
    auto A = U.members;
    for (auto const& e : {F.from_int(2), F.from_int(-2)})
        if (std::find(A.begin(), A.end(), e) == A.end()) A.push_back(e);
    return sumset_covers(F, A, U.members);
}

QuaternionPair make_quaternion_pair(FieldCtx const& K, NfElem const& a, NfElem const& b)
{
    return {a, b, delta_set(K, a, b)};
}

namespace {

bool in_delta(QuaternionPair const& Q, Place const& P)
{
    return std::find(Q.delta.begin(), Q.delta.end(), P) != Q.delta.end();
}

void check_hypothesis(FieldCtx const& K, QuaternionPair const& Q)
{
    for (auto const& P : infinite_places(K)) {
        if (!P.is_real()) continue;
        int s = K.is_rational() ? 1 : P.sign;
        if (K.real_sign(Q.a, s) < 0 && K.real_sign(Q.b, s) < 0)
            throw domain_error("a and b are both negative at " + P.name() + "; trace sets need a real place outside delta");
    }
}

// small integral elements, ordered by size
std::vector<NfElem> small_integral(FieldCtx const& K, long h)
{
    std::vector<NfElem> out;
    for (long r = 0; r <= h; ++r)
        for (long c1 = K.is_rational() ? 0 : -r; c1 <= (K.is_rational() ? 0 : r); ++c1)
            for (long c0 = -r; c0 <= r; ++c0)
                if (std::max(std::labs(c0), std::labs(c1)) == r) out.push_back(K.elem(c0, c1));
    return out;
}

struct LocalChoice {
    NfElem r;
    int precision;
};

std::optional<LocalChoice> local_choice(FieldCtx const& K, NfElem const& t, QuaternionPair const& Q, Place const& P)
{
    if (valuation(K, t, P) >= 0) {
        auto U = u_set(residue_field(K, P));
        auto tb = reduce(K, t, P).value;
        for (auto const& s : U.members)
            if (U.contains(U.field.sub(tb, s))) return LocalChoice{lift_residue(K, P, s), 1};
    }
    NfElem two = K.elem(2), four = K.elem(4);
    for (auto const& r : small_integral(K, 12)) {
        NfElem rest = t - r;
        if (r == two || r == -two || rest == two || rest == -two) continue;
        if (!local_trace_membership(K, r, Q, P) || !local_trace_membership(K, rest, Q, P)) continue;
        int n = std::max(valuation(K, r * r - four, P), valuation(K, rest * rest - four, P)) + 2 * P.e + 2;
        return LocalChoice{r, n};
    }
    return std::nullopt;
}

bool check_quat(FieldCtx const& K, std::array<NfElem, 4> const& x, NfElem const& s, QuaternionPair const& Q)
{
    NfElem n = x[0] * x[0] - Q.a * x[1] * x[1] - Q.b * x[2] * x[2] + Q.a * Q.b * x[3] * x[3];
    return n == K.one() && x[0] * Rat(2) == s;
}

}  // namespace

bool local_trace_membership(FieldCtx const& K, NfElem const& t, QuaternionPair const& Q, Place const& P)
{
    if (!in_delta(Q, P)) return true;
    if (P.is_real()) {
        int s = K.is_rational() ? 1 : P.sign;
        return K.real_sign(t - K.elem(2), s) <= 0 && K.real_sign(t + K.elem(2), s) >= 0;
    }
    if (!P.is_finite()) return true;
    if (!t.is_zero() && valuation(K, t, P) < 0) return false;
    NfElem disc = t * t - K.elem(4);
    if (disc.is_zero()) return true;
    return !is_local_square(K, disc, P);
}

bool t_membership(FieldCtx const& K, NfElem const& t, QuaternionPair const& Q)
{
    check_hypothesis(K, Q);
    if (t.is_zero()) return true;
    for (auto const& P : Q.delta)
        if (P.is_finite() && valuation(K, t, P) < 0) return false;
    return true;
}

std::optional<std::array<NfElem, 4>> norm_one_with_trace(FieldCtx const& K, NfElem const& s, QuaternionPair const& Q,
                                                         long height)
{
    if (height < 1) return std::nullopt;
    NfElem x1 = s * Rat(1, 2);
    NfElem c = x1 * x1 - K.one();
    auto E = enumerate_by_height(K, height);
    NfElem ab = Q.a * Q.b;
    NfElem binv = Q.b.inverse();
    for (auto const& x4 : E)
        for (auto const& x2 : E) {
            NfElem rem = c + ab * x4 * x4 - Q.a * x2 * x2;
            NfElem x3 = K.zero();
            if (!rem.is_zero()) {
                auto r = K.sqrt(rem * binv);
                if (!r) continue;
                x3 = *r;
            }
            std::array<NfElem, 4> x{x1, x2, x3, x4};
            if (check_quat(K, x, s, Q)) return x;
        }
    return std::nullopt;
}

std::optional<TraceCert> t_decompose(FieldCtx const& K, NfElem const& t, QuaternionPair const& Q, long quat_height)
{
    check_hypothesis(K, Q);
    TraceCert c;
    c.t = t;
    auto works = [&](NfElem const& r) {
        for (auto const& P : Q.delta)
            if (!local_trace_membership(K, r, Q, P) || !local_trace_membership(K, t - r, Q, P)) return false;
        return true;
    };
    NfElem two = K.elem(2);
    bool found = false;
    for (auto const& r : {two, -two, t - two, t + two})
        if (works(r)) {
            c.r = r;
            found = true;
            break;
        }
    if (!found) {
        ApproxProblem prob;
        for (auto const& P : Q.delta) {
            if (!P.is_finite()) continue;
            auto lc = local_choice(K, t, Q, P);
            if (!lc) return std::nullopt;
            prob.cong(P, lc->r, lc->precision);
        }
        c.r = weak_approx(K, prob);
        if (!works(c.r)) throw invariant_violation("trace decomposition failed its local checks");
    }
    if (quat_height > 0) {
        c.quat_r = norm_one_with_trace(K, c.r, Q, quat_height);
        if (c.quat_r) c.quat_rest = norm_one_with_trace(K, t - c.r, Q, quat_height);
    }
    return c;
}

bool verify_trace_cert(FieldCtx const& K, TraceCert const& c, QuaternionPair const& Q)
{
    for (auto const& P : Q.delta)
        if (!local_trace_membership(K, c.r, Q, P) || !local_trace_membership(K, c.t - c.r, Q, P)) return false;
    if (c.quat_r && !check_quat(K, *c.quat_r, c.r, Q)) return false;
    if (c.quat_rest && !check_quat(K, *c.quat_rest, c.t - c.r, Q)) return false;
    return true;
}

SigmaBox sigma_box(FieldCtx const& K, QuaternionPair const& Q, Place const& sigma)
{
    if (sigma.is_complex()) return SigmaBox::complex_plane;
    if (!sigma.is_real()) throw domain_error("sigma_box needs an archimedean place");
    int s = K.is_rational() ? 1 : sigma.sign;
    if (K.real_sign(Q.a, s) < 0 && K.real_sign(Q.b, s) < 0) return SigmaBox::interval4;
    return SigmaBox::real_line;
}

std::string to_string(SigmaBox b)
{
    switch (b) {
    case SigmaBox::real_line:
        return "R";
    case SigmaBox::interval4:
        return "[-4,4]";
    case SigmaBox::complex_plane:
        return "C";
    }
    return "?";
}

}  // namespace univint
