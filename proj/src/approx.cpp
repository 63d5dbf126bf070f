#include "univint/approx.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "univint/errors.hpp"

namespace univint {

namespace {

Int ipow(std::int64_t p, int k)
{
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::max(k, 0)));
    return r;
}

Int imod(Int const& a, Int const& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int iinv(Int const& a, Int const& m)
{
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw invariant_violation("CRT: non-invertible difference of roots");
    return r;
}

Int centered(Int const& a, Int const& m)
{
    Int r = imod(a, m);
    if (2 * r > m) r -= m;
    return r;
}

constexpr int kInf = 1 << 29;

int val_or_inf(FieldCtx const& K, NfElem const& x, Place const& P)
{
    return x.is_zero() ? kInf : valuation(K, x, P);
}

int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

struct Target {
    NfElem t;
    int n;
};

// merged per-place targets
std::map<Place, Target> merge(FieldCtx const& K, ApproxProblem const& prob)
{
    std::map<Place, Target> out;
    std::map<Place, int> vals;
    for (auto const& [P, k] : prob.valuations) {
        if (!P.is_finite()) throw domain_error("valuation target at an archimedean place");
        if (vals.count(P)) throw domain_error("two valuation targets at " + P.name());
        vals[P] = k;
    }
    for (auto const& c : prob.congruences) {
        if (!c.place.is_finite()) throw domain_error("congruence at an archimedean place");
        if (out.count(c.place)) throw domain_error("two congruence targets at " + c.place.name());
        auto it = vals.find(c.place);
        if (it == vals.end()) {
            out[c.place] = {c.target, c.precision};
            continue;
        }
        int k = it->second;
        int vt = val_or_inf(K, c.target, c.place);
        if (vt == k && c.precision > k) {
            out[c.place] = {c.target, c.precision};
        } else if (vt == 0) {
            // residue of x / pi^k
            NfElem pi = uniformizer(K, c.place);
            out[c.place] = {c.target * pi.pow(k), k + c.precision};
        } else {
            throw domain_error("inconsistent valuation and residue targets at " + c.place.name());
        }
        vals.erase(it);
    }
    for (auto const& [P, k] : vals) out[P] = {uniformizer(K, P).pow(k), k + 1};
    return out;
}

}  // namespace

bool satisfies(FieldCtx const& K, ApproxProblem const& prob, NfElem const& x)
{
    if (x.is_zero()) return false;
    for (auto const& [P, k] : prob.valuations)
        if (valuation(K, x, P) != k) return false;
    for (auto const& c : prob.congruences) {
        NfElem diff = x - c.target;
        if (!diff.is_zero() && valuation(K, diff, c.place) < c.precision) return false;
    }
    for (auto const& [P, s] : prob.signs)
        if (K.real_sign(x, K.is_rational() ? 1 : P.sign) != s) return false;
    if (prob.integral_outside) {
        std::vector<Place> listed;
        for (auto const& [P, k] : prob.valuations) listed.push_back(P);
        for (auto const& c : prob.congruences) listed.push_back(c.place);
        // a pole lies over a prime of the coordinate denominator
        for (auto const& [p, k] : arith::factor(x.denominator()))
            for (auto const& P : places_above(K, p))
                if (valuation(K, x, P) < 0 && std::find(listed.begin(), listed.end(), P) == listed.end()) return false;
    }
    return true;
}

NfElem weak_approx(FieldCtx const& K, ApproxProblem const& prob)
{
    for (auto const& [P, s] : prob.signs)
        if (!P.is_real()) throw domain_error("sign target at a non-real place");
    auto targets = merge(K, prob);

    std::map<std::int64_t, std::vector<std::pair<Place, Target>>> by_p;
    for (auto const& [P, t] : targets) by_p[P.p].emplace_back(P, t);

    // clear denominators: x = x0 / scale with x0 integral at every constrained prime
    std::map<std::int64_t, int> jp;
    Int scale = 1;
    for (auto& [p, list] : by_p) {
        int e = list.front().first.e;
        int j = 0;
        for (auto const& [P, t] : list) {
            int vt = val_or_inf(K, t.t, P);
            if (vt < kInf) j = std::max(j, ceil_div(-vt, e));
            j = std::max(j, ceil_div(-t.n, e));
        }
        jp[p] = j;
        scale *= ipow(p, j);
    }

    Int M = 1, X0 = 0, X1 = 0;
    for (auto& [p, list] : by_p) {
        int e = list.front().first.e;
        int j = jp[p];
        // scaled targets, with zero targets at unlisted places above p
        std::vector<std::pair<Place, Target>> sc;
        for (auto const& P : places_above(K, p)) {
            auto it = std::find_if(list.begin(), list.end(), [&](auto const& q) { return q.first == P; });
            if (it != list.end()) {
                int n = it->second.n + e * j;
                if (n > 0) sc.push_back({P, {it->second.t * Rat(scale), n}});
            } else if (j > 0) {
                sc.push_back({P, {K.zero(), e * j}});
            }
        }
        if (sc.empty()) continue;
        Int mod_p, c0, c1;
        auto const& Ps = places_above(K, p);
        if (Ps.size() == 2) {
            // split: solve c0 + c1*rho_i = T_i mod p^k
            int k = 1;
            for (auto const& [P, t] : sc) k = std::max(k, t.n);
            mod_p = ipow(p, k);
            Int T[2], rho[2];
            for (int i = 0; i < 2; ++i) {
                LocalRing R(K, Ps[i], k);
                rho[i] = R.rho();
                auto it = std::find_if(sc.begin(), sc.end(), [&](auto const& q) { return q.first == Ps[i]; });
                T[i] = it == sc.end() ? Int(1) : R.image(it->second.t).c0;
            }
            c1 = imod((T[0] - T[1]) * iinv(rho[0] - rho[1], mod_p), mod_p);
            c0 = imod(T[0] - c1 * rho[0], mod_p);
        } else {
            auto const& [P, t] = sc.front();
            LocalRing R(K, P, t.n);
            auto im = R.image(t.t);
            mod_p = R.modulus();
            c0 = im.c0;
            c1 = im.c1;
        }
        // CRT merge
        Int g, s, u;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), M.get_mpz_t(), mod_p.get_mpz_t());
        Int Mn = M * mod_p;
        X0 = imod(X0 + M * s * (c0 - X0), Mn);
        X1 = imod(X1 + M * s * (c1 - X1), Mn);
        M = Mn;
    }
    X0 = centered(X0, M);
    X1 = centered(X1, M);
    NfElem x0 = K.elem(Rat(X0), Rat(X1));
    if (x0.is_zero()) x0 = K.elem(Rat(M));

    if (!prob.signs.empty()) {
        int s1 = 0, s2 = 0;
        for (auto const& [P, s] : prob.signs) (P.sign > 0 || K.is_rational() ? s1 : s2) = s;
        NfElem dir;
        if (K.is_rational() || s2 == 0)
            dir = K.elem(s1);
        else if (s1 == 0)
            dir = K.elem(s2);
        else if (s1 == s2)
            dir = K.elem(s1);
        else
            dir = K.sqrt_d() * Rat(s1);
        bool ok = false;
        Int C = 0;
        for (int it = 0; it < 400; ++it) {
            NfElem cand = x0 + dir * Rat(M * C);
            bool good = !cand.is_zero();
            for (auto const& [P, s] : prob.signs)
                if (good && K.real_sign(cand, K.is_rational() ? 1 : P.sign) != s) good = false;
            if (good) {
                x0 = cand;
                ok = true;
                break;
            }
            C = C == 0 ? Int(1) : Int(2 * C);
        }
        if (!ok) throw invariant_violation("weak approximation: sign correction failed");
    }
    NfElem x = x0 * Rat(1, scale);
    if (!satisfies(K, prob, x)) throw invariant_violation("weak approximation output fails its constraints");
    return x;
}

void for_each_by_height(FieldCtx const& K, long H, std::function<void(NfElem const&)> const& fn)
{
    if (H < 1) throw domain_error("height bound must be >= 1");
    long bmax = K.is_rational() ? 0 : H;
    for (long c = 1; c <= H; ++c)
        for (long a = -H; a <= H; ++a)
            for (long b = -bmax; b <= bmax; ++b) {
                long g = std::gcd(std::gcd(std::labs(a), std::labs(b)), c);
                if (g != 1) continue;
                fn(K.elem(Rat(a, c), Rat(b, c)));
            }
}

std::vector<NfElem> enumerate_by_height(FieldCtx const& K, long H)
{
    std::vector<NfElem> out;
    for_each_by_height(K, H, [&](NfElem const& x) { out.push_back(x); });
    return out;
}

}  // namespace univint
