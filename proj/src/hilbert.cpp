#include "univint/hilbert.hpp"

#include <algorithm>
#include <mutex>

#include "field_cache.hpp"
#include "univint/approx.hpp"
#include "univint/errors.hpp"

namespace univint {

namespace {

// O / p^k O (or Z / p^n at split-like places) with machine-word coordinates.
struct SmallRing {
    std::int64_t m = 1;
    bool pairs = false;
    std::int64_t T = 0, Nw = 0;

    std::int64_t size() const { return pairs ? m * m : m; }
    std::int64_t md(__int128 x) const
    {
        auto r = static_cast<std::int64_t>(x % m);
        return r < 0 ? r + m : r;
    }
    std::int64_t mul(std::int64_t x, std::int64_t y) const
    {
        if (!pairs) return md(static_cast<__int128>(x) * y);
        __int128 x0 = x % m, x1 = x / m, y0 = y % m, y1 = y / m;
        std::int64_t c0 = md(x0 * y0 - Nw * x1 * y1);
        std::int64_t c1 = md(x0 * y1 + x1 * y0 + T * x1 * y1);
        return c0 + m * c1;
    }
    std::int64_t add(std::int64_t x, std::int64_t y) const
    {
        if (!pairs) return md(static_cast<__int128>(x) + y);
        return md(static_cast<__int128>(x % m) + y % m) + m * md(static_cast<__int128>(x / m) + y / m);
    }
    std::int64_t sub(std::int64_t x, std::int64_t y) const
    {
        if (!pairs) return md(static_cast<__int128>(x) - y);
        return md(static_cast<__int128>(x % m) - y % m) + m * md(static_cast<__int128>(x / m) - y / m);
    }
    std::int64_t index(LocalRing::Elem const& e) const { return arith::to_i64(e.c0) + m * arith::to_i64(e.c1); }
    LocalRing::Elem elem(std::int64_t i) const
    {
        if (!pairs) return {Int(static_cast<long>(i)), 0};
        return {Int(static_cast<long>(i % m)), Int(static_cast<long>(i / m))};
    }
};

constexpr std::int64_t kMaxRing = std::int64_t(1) << 24;

SmallRing small_ring(FieldCtx const& K, LocalRing const& R)
{
    SmallRing S;
    if (!R.modulus().fits_slong_p()) throw search_exhausted("local ring too large at " + R.place().name());
    S.m = R.modulus().get_si();
    S.pairs = R.pairs();
    if (S.pairs) {
        std::int64_t d = K.d();
        S.T = K.half_basis() ? 1 : 0;
        S.Nw = arith::mod(K.half_basis() ? -(d - 1) / 4 : -d, S.m);
    }
    if (S.size() > kMaxRing) throw search_exhausted("local ring too large at " + R.place().name());
    return S;
}

bool conic_search(SmallRing const& R, std::int64_t ia, std::int64_t ib)
{
    std::int64_t n = R.size();
    std::vector<std::int64_t> sq(static_cast<std::size_t>(n));
    std::vector<char> S(static_cast<std::size_t>(n), 0);
    for (std::int64_t z = 0; z < n; ++z) {
        sq[z] = R.mul(z, z);
        S[sq[z]] = 1;
    }
    for (std::int64_t x = 0; x < n; ++x)  // y = 1
        if (S[R.add(R.mul(ia, sq[x]), ib)]) return true;
    for (std::int64_t y = 0; y < n; ++y)  // x = 1
        if (S[R.add(ia, R.mul(ib, sq[y]))]) return true;
    std::vector<char> B(static_cast<std::size_t>(n), 0);  // z = 1
    for (std::int64_t y = 0; y < n; ++y) B[R.mul(ib, sq[y])] = 1;
    for (std::int64_t x = 0; x < n; ++x)
        if (B[R.sub(1, R.mul(ia, sq[x]))]) return true;
    return false;
}

// v_P(tau) = -1
NfElem tau(Place const& P) { return P.beta * Rat(1, Int(static_cast<long>(P.p))); }

long floor_div2(long v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

// a * tau^(2m) with valuation 0 or 1
NfElem strip(FieldCtx const& K, NfElem const& a, Place const& P)
{
    int v = valuation(K, a, P);
    return a * tau(P).pow(2 * floor_div2(v));
}

template <class T, class F>
std::shared_ptr<T const> cached(FieldCtx const& K, std::string const& key, F&& build)
{
    auto& c = K.cache();
    {
        std::lock_guard<std::mutex> lk(c.mu);
        auto it = c.local.find(key);
        if (it != c.local.end()) return std::static_pointer_cast<T const>(it->second);
    }
    auto v = std::make_shared<T const>(build());
    std::lock_guard<std::mutex> lk(c.mu);
    auto [it, ins] = c.local.emplace(key, v);
    return std::static_pointer_cast<T const>(it->second);
}

struct DyadicSquares {
    SmallRing ring;
    std::vector<char> mark;
};

// units that are squares mod P^(2e+1), which is the same as squares in K_P
std::shared_ptr<DyadicSquares const> dyadic_squares(FieldCtx const& K, Place const& P)
{
    return cached<DyadicSquares>(K, "sq|" + P.name(), [&] {
        int n = 2 * P.e + 1;
        LocalRing R(K, P, n);
        DyadicSquares D;
        D.ring = small_ring(K, R);
        std::int64_t N = D.ring.size();
        std::vector<std::int64_t> deep;
        for (std::int64_t t = 0; t < N; ++t) {
            NfElem lt = R.lift(D.ring.elem(t));
            if (lt.is_zero() || valuation(K, lt, P) >= n) deep.push_back(t);
        }
        D.mark.assign(static_cast<std::size_t>(N), 0);
        for (std::int64_t z = 0; z < N; ++z) {
            std::int64_t s = D.ring.mul(z, z);
            for (auto t : deep) D.mark[D.ring.add(s, t)] = 1;
        }
        return D;
    });
}

int real_symbol(FieldCtx const& K, NfElem const& a, NfElem const& b, Place const& P)
{
    int s = K.is_rational() ? 1 : P.sign;
    return (K.real_sign(a, s) < 0 && K.real_sign(b, s) < 0) ? -1 : 1;
}

int odd_symbol(FieldCtx const& K, NfElem const& a, NfElem const& b, Place const& P)
{
    int va = valuation(K, a, P), vb = valuation(K, b, P);
    NfElem pi = uniformizer(K, P);
    NfElem a0 = a / pi.pow(va), b0 = b / pi.pow(vb);
    auto F = residue_field(K, P);
    int s = 1;
    if ((va & 1) && (vb & 1)) s *= F.quadratic_character(F.neg(F.one()));
    if (vb & 1) s *= F.quadratic_character(reduce(K, a0, P).value);
    if (va & 1) s *= F.quadratic_character(reduce(K, b0, P).value);
    return s;
}

std::vector<NfElem> build_basis(FieldCtx const& K, Place const& P)
{
    if (P.is_complex()) return {};
    if (P.is_real()) return {K.elem(-1)};
    NfElem pi = uniformizer(K, P);
    if (!P.is_dyadic()) {
        auto F = residue_field(K, P);
        for (long h = 2;; ++h)
            for (long c1 = 0; c1 <= (P.f == 2 ? h : 0); ++c1)
                for (long c0 = 0; c0 <= h; ++c0) {
                    NfElem u = K.elem(c0, c1);
                    if (u.is_zero() || valuation(K, u, P) != 0) continue;
                    if (F.quadratic_character(reduce(K, u, P).value) == -1) return {u, pi};
                }
    }
    int target = P.e * P.f + 2;
    std::vector<NfElem> basis, span{K.one()};
    auto try_add = [&](NfElem const& c) {
        if (c.is_zero() || static_cast<int>(basis.size()) >= target) return;
        for (auto const& s : span)
            if (is_local_square(K, c * s, P)) return;
        basis.push_back(c);
        std::size_t n = span.size();
        for (std::size_t i = 0; i < n; ++i) span.push_back(span[i] * c);
    };
    try_add(K.elem(-1));
    try_add(pi);
    std::vector<NfElem> xs{K.elem(1)};
    if (!K.is_rational()) {
        NfElem w = K.omega();
        xs.insert(xs.end(), {w, K.elem(1) + w, K.elem(-1), -w, K.elem(1) - w});
    }
    for (auto const& x : xs) try_add(K.elem(1) + x * Rat(4));
    for (long h = 1; static_cast<int>(basis.size()) < target && h <= 8; ++h)
        for (long c1 = K.is_rational() ? 0 : -h; c1 <= (K.is_rational() ? 0 : h); ++c1)
            for (long c0 = -h; c0 <= h; ++c0) try_add(K.elem(c0, c1));
    if (static_cast<int>(basis.size()) != target)
        throw invariant_violation("square-class basis incomplete at " + P.name());
    return basis;
}

std::shared_ptr<std::vector<int> const> dyadic_table(FieldCtx const& K, Place const& P)
{
    return cached<std::vector<int>>(K, "htab|" + P.name(), [&] {
        auto const& B = square_class_basis(K, P);
        std::size_t n = B.size();
        std::vector<int> t(n * n, 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) t[i * n + j] = t[j * n + i] = conic_solvable(K, B[i], B[j], P) ? 1 : -1;
        return t;
    });
}

}  // namespace

bool is_local_square(FieldCtx const& K, NfElem const& x, Place const& P)
{
    if (x.is_zero()) throw domain_error("local square test of zero");
    if (P.is_complex()) return true;
    if (P.is_real()) return K.real_sign(x, K.is_rational() ? 1 : P.sign) > 0;
    int v = valuation(K, x, P);
    if (v & 1) return false;
    NfElem u = x * tau(P).pow(v);
    if (!P.is_dyadic()) {
        auto F = residue_field(K, P);
        return F.quadratic_character(reduce(K, u, P).value) == 1;
    }
    auto D = dyadic_squares(K, P);
    LocalRing R(K, P, 2 * P.e + 1);
    return D->mark[D->ring.index(R.image(u))] != 0;
}

int conic_precision(FieldCtx const& K, NfElem const& a, NfElem const& b, Place const& P)
{
    NfElem a1 = strip(K, a, P), b1 = strip(K, b, P);
    int va = valuation(K, a1, P), vb = valuation(K, b1, P);
    if (P.is_dyadic()) return 2 * P.e * P.e + 2 * P.e + va + vb + 3;
    return 1 + std::max(va, vb);
}

bool conic_solvable(FieldCtx const& K, NfElem const& a, NfElem const& b, Place const& P)
{
    if (a.is_zero() || b.is_zero()) throw domain_error("conic with a zero coefficient");
    if (!P.is_finite()) throw domain_error("conic search needs a finite place");
    NfElem a1 = strip(K, a, P), b1 = strip(K, b, P);
    LocalRing R(K, P, conic_precision(K, a, b, P));
    SmallRing S = small_ring(K, R);
    return conic_search(S, S.index(R.image(a1)), S.index(R.image(b1)));
}

std::vector<NfElem> const& square_class_basis(FieldCtx const& K, Place const& P)
{
    return *cached<std::vector<NfElem>>(K, "basis|" + P.name(), [&] { return build_basis(K, P); });
}

std::vector<NfElem> local_class_representatives(FieldCtx const& K, Place const& P)
{
    auto const& B = square_class_basis(K, P);
    std::vector<NfElem> reps;
    for (unsigned bits = 0; bits < (1u << B.size()); ++bits) {
        NfElem r = K.one();
        for (std::size_t i = 0; i < B.size(); ++i)
            if (bits >> i & 1) r *= B[i];
        reps.push_back(r);
    }
    return reps;
}

unsigned square_class_index(FieldCtx const& K, NfElem const& x, Place const& P)
{
    auto reps = local_class_representatives(K, P);
    for (unsigned i = 0; i < reps.size(); ++i)
        if (is_local_square(K, x * reps[i], P)) return i;
    throw invariant_violation("no square class found at " + P.name());
}

int hilbert_symbol(FieldCtx const& K, NfElem const& a, NfElem const& b, Place const& P)
{
    if (a.is_zero() || b.is_zero()) throw domain_error("Hilbert symbol of zero");
    if (P.is_complex()) return 1;
    if (P.is_real()) return real_symbol(K, a, b, P);
    if (!P.is_dyadic()) return odd_symbol(K, a, b, P);
    auto t = dyadic_table(K, P);
    std::size_t n = square_class_basis(K, P).size();
    unsigned ia = square_class_index(K, a, P), ib = square_class_index(K, b, P);
    int s = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((ia >> i & 1) && (ib >> j & 1)) s *= (*t)[i * n + j];
    return s;
}

PlaceSet candidate_places(FieldCtx const& K, NfElem const& a, NfElem const& b)
{
    PlaceSet out = places_above(K, 2);
    for (auto const& x : {a, b})
        for (auto const& [P, e] : factor_ideal(K, x)) out.push_back(P);
    for (auto const& P : infinite_places(K)) out.push_back(P);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PlaceSet delta_set(FieldCtx const& K, NfElem const& a, NfElem const& b)
{
    PlaceSet out;
    for (auto const& P : candidate_places(K, a, b))
        if (hilbert_symbol(K, a, b, P) == -1) out.push_back(P);
    return out;
}

ReciprocityReport reciprocity_audit(FieldCtx const& K, NfElem const& a, NfElem const& b)
{
    ReciprocityReport r;
    for (auto const& P : candidate_places(K, a, b)) {
        int s = hilbert_symbol(K, a, b, P);
        r.symbols.emplace_back(P, s);
        r.product *= s;
    }
    return r;
}

}  // namespace univint
