#include "univint/definability.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "univint/approx.hpp"
#include "univint/errors.hpp"

namespace univint {

namespace {

PlaceSet intersect(PlaceSet const& x, PlaceSet const& y)
{
    PlaceSet out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

bool contains(PlaceSet const& s, Place const& P) { return std::find(s.begin(), s.end(), P) != s.end(); }

PlaceSet finite_delta(QuaternionPair const& Q)
{
    PlaceSet out;
    for (auto const& P : Q.delta)
        if (P.is_finite()) out.push_back(P);
    return out;
}

int val(FieldCtx const& K, NfElem const& x, Place const& P) { return valuation(K, x, P); }

// v_P(x - t) >= this pins x to the square class of t
int class_precision(FieldCtx const& K, NfElem const& t, Place const& P)
{
    return valuation(K, t, P) + (P.is_dyadic() ? 2 * P.e + 1 : 1);
}

// weak_approx, then shifted by the modulus of prob until (x) factors
NfElem factorable_approx(FieldCtx const& K, ApproxProblem const& prob)
{
    NfElem x0 = weak_approx(K, prob);
    Int M = 1;
    auto mul = [&](Place const& P, int n) {
        if (n <= 0) return;
        Int pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(P.p), static_cast<unsigned long>((n + P.e - 1) / P.e));
        M *= pk;
    };
    for (auto const& c : prob.congruences) mul(c.place, c.precision);
    for (auto const& [P, k] : prob.valuations) mul(P, k + 1);
    std::mt19937_64 rng(7);
    for (long tries = 0; tries < 4000; ++tries) {
        long h = 1 + tries / 32;
        std::uniform_int_distribution<long> coord(-h, h);
        NfElem x = tries == 0 ? x0 : x0 + K.elem(coord(rng), K.is_rational() ? 0 : coord(rng)) * Rat(M);
        if (x.is_zero() || !satisfies(K, prob, x)) continue;
        try {
            factor_ideal(K, x);
        } catch (domain_error const&) {
            continue;
        }
        return x;
    }
    throw search_exhausted("no factorable element for the approximation problem");
}

std::string join(PlaceSet const& s)
{
    std::string out;
    for (auto const& P : s) out += (out.empty() ? "" : "; ") + P.name();
    return out;
}

}  // namespace

PlaceSet odd_support(FieldCtx const& K, NfElem const& c)
{
    PlaceSet out;
    for (auto const& [P, e] : factor_ideal(K, c))
        if (e % 2) out.push_back(P);
    return out;
}

bool in_square_times_trace_units(FieldCtx const& K, NfElem const& x, QuaternionPair const& Q)
{
    if (x.is_zero()) throw domain_error("square class test of zero");
    for (auto const& P : finite_delta(Q))
        if (val(K, x, P) % 2) return false;
    return true;
}

std::optional<NfElem> square_times_trace_unit_root(FieldCtx const& K, NfElem const& x, QuaternionPair const& Q)
{
    if (x.is_zero()) throw domain_error("square class test of zero");
    ApproxProblem prob;
    for (auto const& P : finite_delta(Q)) {
        int v = val(K, x, P);
        if (v % 2) return std::nullopt;
        prob.val(P, v / 2);
    }
    NfElem r = weak_approx(K, prob);
    NfElem u = x / (r * r);
    if (!t_membership(K, u, Q) || !t_membership(K, u.inverse(), Q)) return std::nullopt;
    return r;
}

bool in_I_c(FieldCtx const& K, NfElem const& y, QuaternionPair const& Q, NfElem const& c)
{
    if (c.is_zero()) throw domain_error("I^c with c = 0");
    if (y.is_zero() || y == K.one()) return false;
    PlaceSet Pc = odd_support(K, c);
    NfElem w = K.one() - y;
    for (auto const& P : finite_delta(Q)) {
        int v = val(K, y, P);
        if (contains(Pc, P)) {
            if (v <= 0 || v % 2 == 0) return false;
        } else if (v % 2 || val(K, w, P) % 2) {
            return false;
        }
    }
    return true;
}

bool in_I_c_formula(FieldCtx const& K, NfElem const& y, QuaternionPair const& Q, NfElem const& c)
{
    if (c.is_zero()) throw domain_error("I^c with c = 0");
    if (y.is_zero() || y == K.one()) return false;
    return in_square_times_trace_units(K, y / c, Q) && in_square_times_trace_units(K, K.one() - y, Q);
}

std::optional<NfElem> split_in_I_c(FieldCtx const& K, NfElem const& z, QuaternionPair const& Q, NfElem const& c)
{
    PlaceSet D = finite_delta(Q);
    PlaceSet Pc = odd_support(K, c);
    auto good = [&](NfElem const& y) { return in_I_c_formula(K, y, Q, c) && in_I_c_formula(K, z - y, Q, c); };
    if (D.empty()) {
        for (long k = 2; k < 10; ++k)
            if (good(K.elem(k))) return K.elem(k);
        return std::nullopt;
    }
    ApproxProblem prob;
    for (auto const& P : D) {
        int vz = z.is_zero() ? (1 << 20) : val(K, z, P);
        int m;
        if (contains(Pc, P)) {
            // odd and positive for y and z - y
            m = (vz >= 1 && vz % 2 == 1 && vz < (1 << 20)) ? vz + 2 : 1;
        } else {
            // y, 1 - y, z - y, 1 - z + y all of the same even negative valuation
            int lo = std::min(0, vz);
            m = lo - 2;
            if (m % 2) --m;
        }
        prob.val(P, m);
    }
    NfElem y = weak_approx(K, prob);
    if (good(y)) return y;
    return std::nullopt;
}

bool in_J(FieldCtx const& K, NfElem const& x, QuaternionPair const& Q)
{
    if (x.is_zero()) return true;
    PlaceSet S = odd_support(K, Q.a), Sb = odd_support(K, Q.b);
    S.insert(S.end(), Sb.begin(), Sb.end());
    for (auto const& P : finite_delta(Q))
        if (contains(S, P) && val(K, x, P) < 1) return false;
    return true;
}

std::optional<JCert> in_J_constructive(FieldCtx const& K, NfElem const& x, QuaternionPair const& Q)
{
    if (x.is_zero()) return JCert{K.zero(), K.zero()};
    auto y1 = split_in_I_c(K, x, Q, Q.a);
    if (!y1) return std::nullopt;
    auto y2 = split_in_I_c(K, x, Q, Q.b);
    if (!y2) return std::nullopt;
    return JCert{*y1, *y2};
}

bool in_Phi(RayContext const& ctx, NfElem const& p, GaloisLabel sigma)
{
    if (p.is_zero()) return false;
    auto f = factor_ideal(ctx.K, p);
    for (auto const& [P, e] : f)
        if (ctx.modulus.divides(P)) return false;
    GaloisLabel total;
    for (auto const& [P, e] : f) {
        if (e % 2 == 0) continue;
        auto l = artin_label(ctx, P);
        if (!l.trivial() && !(l == sigma)) return false;
        total = total * l;
    }
    return total == sigma;
}

bool in_Phi_tilde(RayContext const& ctx, NfElem const& p, GaloisLabel sigma)
{
    if (p.is_zero()) return false;
    GaloisLabel total;
    for (auto const& [P, e] : factor_ideal(ctx.K, p)) {
        if (e % 2 == 0) continue;
        if (ctx.modulus.divides(P)) return false;
        auto l = artin_label(ctx, P);
        if (!l.trivial() && !(l == sigma)) return false;
        total = total * l;
    }
    return total == sigma;
}

int modulus_symbol_product(RayContext const& ctx, NfElem const& p, NfElem const& q)
{
    NfElem ap = ctx.a * p;
    int s = 1;
    for (auto const& [P, e] : ctx.modulus.m0_factors) s *= hilbert_symbol(ctx.K, ap, q, P);
    for (auto const& P : ctx.modulus.real_places) s *= hilbert_symbol(ctx.K, ap, q, P);
    return s;
}

bool in_Psi(RayContext const& ctx, NfElem const& p, NfElem const& q, GaloisLabel sigma)
{
    auto const& K = ctx.K;
    if (p.is_zero() || q.is_zero()) return false;
    if (!in_Phi_tilde(ctx, q, {-1, -1})) return false;
    if (sigma.trivial()) {
        if (!in_Phi_tilde(ctx, p, {1, 1})) return false;
    } else {
        // labels in {(1,1), sigma}, and an even number of sigma
        GaloisLabel total;
        for (auto const& [P, e] : factor_ideal(K, p)) {
            if (e % 2 == 0) continue;
            if (ctx.modulus.divides(P)) return false;
            auto l = artin_label(ctx, P);
            if (!l.trivial() && !(l == sigma)) return false;
            total = total * l;
        }
        if (!total.trivial()) return false;
    }
    if (modulus_symbol_product(ctx, p, q) != -1) return false;
    // p/a in K^x2 (1 + J(R)), R = R_q^{[-1,-1]}: a local square at the odd
    // primes of R, even valuation at the dyadic ones; a global square if R = K
    PlaceSet D = intersect(delta_set(K, ctx.a, q), delta_set(K, ctx.b, q));
    NfElem x = p / ctx.a;
    bool any = false;
    for (auto const& P : D) {
        if (!P.is_finite()) return false;
        any = true;
        if (P.is_dyadic() ? val(K, x, P) % 2 != 0 : !is_local_square(K, x, P)) return false;
    }
    if (!any) return K.sqrt(x).has_value();
    return true;
}

PlaceSet ring_delta(RayContext const& ctx, WitnessRing const& R)
{
    auto const& K = ctx.K;
    switch (R.kind) {
    case WitnessRing::Kind::local:
        if (!R.place) throw domain_error("local witness ring without a place");
        return {*R.place};
    case WitnessRing::Kind::pair:
        return intersect(delta_set(K, ctx.a * R.p, R.q), delta_set(K, ctx.b * R.p, R.q));
    case WitnessRing::Kind::sigma:
        break;
    }
    NfElem ab = ctx.a * ctx.b;
    auto const& s = R.sigma;
    if (s == GaloisLabel{-1, -1}) return intersect(delta_set(K, ctx.a, R.p), delta_set(K, ctx.b, R.p));
    if (s == GaloisLabel{1, -1}) return intersect(delta_set(K, ab, R.p), delta_set(K, ctx.b, R.p));
    if (s == GaloisLabel{-1, 1}) return intersect(delta_set(K, ctx.a, R.p), delta_set(K, ab, R.p));
    throw domain_error("no ring R_p^sigma for sigma = (1,1)");
}

WitnessRing construct_sigma_witness(RayContext const& ctx, Place const& p0)
{
    auto const& K = ctx.K;
    if (!p0.is_finite() || ctx.modulus.divides(p0)) throw domain_error("sigma witness needs a prime off the modulus");
    GaloisLabel sigma = artin_label(ctx, p0);
    if (sigma.trivial()) throw domain_error("sigma witness needs a label other than (1,1)");
    auto units = K.units_mod_squares();
    std::optional<WitnessRing> fallback;
    WitnessRing R;
    R.kind = WitnessRing::Kind::sigma;
    R.sigma = sigma;
    auto attempt = [&](NfElem const& gen) {
        for (auto const& u : units) {
            R.p = gen * u;
            if (!in_Phi(ctx, R.p, sigma)) continue;
            R.delta = ring_delta(ctx, R);
            if (R.delta == PlaceSet{p0}) return true;
            if (!fallback && contains(R.delta, p0)) fallback = R;
        }
        return false;
    };
    Ideal I0 = Ideal::prime(K, p0);
    if (auto g = is_principal(K, I0); g && attempt(*g)) return R;
    std::size_t cls = class_index(K, I0.inverse());
    PlaceSet exclude{p0};
    int rounds = sigma == GaloisLabel{-1, -1} ? 64 : 8;
    for (int k = 0; k < rounds; ++k) {
        Place q = find_prime(ctx, cls, {1, 1}, exclude);
        exclude.push_back(q);
        auto g = is_principal(K, I0 * Ideal::prime(K, q));
        if (!g) throw invariant_violation("p0 q is not principal although q is in the inverse class");
        if (attempt(*g)) return R;
    }
    if (fallback) return *fallback;
    throw search_exhausted("sigma witness: no p in Phi with " + p0.name() + " in delta");
}

QChoice construct_q(RayContext const& ctx, Place const& p0, std::vector<NfElem> const& avoid, int want_residue)
{
    auto const& K = ctx.K;
    if (!p0.is_finite() || ctx.modulus.divides(p0)) throw domain_error("construct_q needs a prime off the modulus");
    PlaceSet exclude{p0};
    for (auto const& e : avoid)
        for (auto const& [P, k] : factor_ideal(K, e)) exclude.push_back(P);
    auto units = K.units_mod_squares();
    for (;;) {
        Place P = find_prime(ctx, 0, {-1, -1}, exclude);
        exclude.push_back(P);
        auto g = is_principal(K, Ideal::prime(K, P));
        if (!g) throw invariant_violation("prime of the trivial class without a generator");
        for (auto const& u : units) {
            NfElem q = *g * u;
            if (power_residue_symbol(K, q, p0) == want_residue) return {q, P};
        }
    }
}

PairWitness construct_pair_witness(RayContext const& ctx, Place const& p0, SolveConfig const& cfg)
{
    auto const& K = ctx.K;
    if (!p0.is_finite() || ctx.modulus.divides(p0)) throw domain_error("pair witness needs a prime off the modulus");
    GaloisLabel sigma = artin_label(ctx, p0);
    if (sigma == GaloisLabel{-1, -1}) throw domain_error("pair witness needs a label other than (-1,-1)");
    PairWitness out;

    // square-class bases at the primes of m0, moved to 1 mod p0
    for (auto const& [P, e] : ctx.modulus.m0_factors)
        for (auto const& b : square_class_basis(K, P)) {
            ApproxProblem prob;
            prob.cong(P, b, class_precision(K, b, P)).cong(p0, K.one(), 1);
            NfElem x = factorable_approx(K, prob);
            if (!is_local_square(K, x * b, P)) throw invariant_violation("shifted basis element left its class");
            out.E.push_back(x);
        }

    auto qc = construct_q(ctx, p0, out.E);
    NfElem q = qc.q;

    // e0: small, (e0/q) = -1 and (e0/p0) = +1
    for (long H = 1; H <= 64 && out.e0.is_zero(); H *= 2)
        for_each_by_height(K, H, [&](NfElem const& e) {
            if (!out.e0.is_zero() || e.is_zero() || !K.is_integral(e)) return;
            if (val(K, e, qc.prime) != 0 || val(K, e, p0) != 0) return;
            if (power_residue_symbol(K, e, qc.prime) == -1 && power_residue_symbol(K, e, p0) == 1) out.e0 = e;
        });
    if (out.e0.is_zero()) throw search_exhausted("pair witness: no small e0");

    // The E rows are +1 everywhere and only force p to be a local square at
    // the primes of m0. The solver already pins x = 1 at every unflagged place
    // of S, which contains those primes, so they stay out of the solved table
    // (their supports would only inflate the search modulus); checked below.
    Prescription& T = out.table;
    T.family = {out.e0, q, ctx.a, ctx.b};
    std::size_t qrow = 1, arow = 2, brow = 3;
    T.set(qrow, p0, -1);
    T.set(qrow, qc.prime, -1);

    if (!sigma.trivial()) {
        // (a, p) and (b, p) at p0 are the label of p0; a second prime of the
        // same label, invisible to the other rows, restores the product formula
        PlaceSet bad{p0, qc.prime};
        for (auto const& f : T.family)
            for (auto const& [P, k] : factor_ideal(K, f)) bad.push_back(P);
        std::sort(bad.begin(), bad.end());
        for (auto const& P : primes_by_norm(K, ctx.norm_bound)) {
            if (ctx.modulus.divides(P) || std::binary_search(bad.begin(), bad.end(), P)) continue;
            if (!(artin_label(ctx, P) == sigma)) continue;
            if (power_residue_symbol(K, out.e0, P) == 1 && power_residue_symbol(K, q, P) == 1) {
                out.ell = P;
                break;
            }
        }
        if (!out.ell) throw search_exhausted("pair witness: no partner prime of label " + sigma.to_string());
        for (auto const& P : {p0, *out.ell}) {
            T.set(arow, P, sigma.i);
            T.set(brow, P, sigma.j);
        }
    }
    out.cert = solve(K, T, cfg);
    NfElem p = out.cert.x;
    for (auto const& e : out.E)
        for (auto const& [P, k] : ctx.modulus.m0_factors)
            if (hilbert_symbol(K, e, p, P) != 1) throw invariant_violation("solved p is not a local square at " + P.name());

    // p is a local square at every prime of m0: remove those valuations when
    // the square root of that part is principal
    Ideal half = Ideal::unit(K);
    for (auto const& [P, e] : ctx.modulus.m0_factors) {
        int v = val(K, p, P);
        if (v % 2) throw invariant_violation("solved p has odd valuation at " + P.name());
        for (int k = 0; k < std::abs(v) / 2; ++k) half = v > 0 ? half * Ideal::prime(K, P) : half * Ideal::prime(K, P).inverse();
    }
    if (auto r = is_principal(K, half)) p = p / (*r * *r);

    out.ring.kind = WitnessRing::Kind::pair;
    out.ring.sigma = sigma;
    out.ring.p = p;
    out.ring.q = q;
    out.ring.delta = ring_delta(ctx, out.ring);
    if (out.ring.delta != PlaceSet{p0})
        throw invariant_violation("pair witness delta is {" + join(out.ring.delta) + "}, expected {" + p0.name() + "}");
    if (!in_Psi(ctx, p, q, sigma)) throw invariant_violation("pair witness is not in Psi");
    return out;
}

namespace {

struct RingCache {
    std::mutex mu;
    std::map<std::string, WitnessRing> rings;
};

RingCache& ring_cache()
{
    static RingCache c;
    return c;
}

// (-1,-1): the sigma ring is exact; every other label goes through a pair ring
WitnessRing ring_for(RayContext const& ctx, Place const& p0)
{
    std::string key = context_hash(ctx) + "|" + p0.name();
    {
        std::lock_guard<std::mutex> lk(ring_cache().mu);
        auto it = ring_cache().rings.find(key);
        if (it != ring_cache().rings.end()) return it->second;
    }
    WitnessRing R;
    if (ctx.modulus.divides(p0)) {
        R.kind = WitnessRing::Kind::local;
        R.place = p0;
        R.delta = {p0};
    } else if (artin_label(ctx, p0) == GaloisLabel{-1, -1}) {
        R = construct_sigma_witness(ctx, p0);
    } else {
        R = construct_pair_witness(ctx, p0).ring;
    }
    std::lock_guard<std::mutex> lk(ring_cache().mu);
    ring_cache().rings.emplace(key, R);
    return R;
}

}  // namespace

bool verify_witness(RayContext const& ctx, Witness const& w, std::string* why)
{
    auto fail = [&](std::string const& m) {
        if (why) *why = m;
        return false;
    };
    auto const& K = ctx.K;
    if (w.t.is_zero() || w.y.is_zero()) return fail("zero t or y");
    if (!(w.t * w.y == K.one())) return fail("t y != 1");
    PlaceSet D = ring_delta(ctx, w.ring);
    if (D != w.ring.delta) return fail("stored delta differs from the recomputed one {" + join(D) + "}");
    if (D.empty()) return fail("empty delta");
    for (auto const& P : D)
        if (!P.is_finite()) return fail("archimedean place " + P.name() + " in delta");
    if (!contains(D, w.bad_prime)) return fail("bad prime not in delta");
    if (val(K, w.t, w.bad_prime) >= 0) return fail("t is integral at the bad prime");
    if (w.valuations.size() != D.size()) return fail("valuation table does not cover delta");
    for (std::size_t i = 0; i < D.size(); ++i) {
        int v = val(K, w.y, D[i]);
        if (w.valuations[i].first != D[i] || w.valuations[i].second != v) return fail("valuation table mismatch");
        if (v < 1) return fail("y is not in the Jacobson radical at " + D[i].name());
    }
    switch (w.ring.kind) {
    case WitnessRing::Kind::local:
        if (!ctx.modulus.divides(*w.ring.place)) return fail("local witness away from the modulus");
        break;
    case WitnessRing::Kind::sigma:
        if (w.ring.sigma.trivial() || !in_Phi(ctx, w.ring.p, w.ring.sigma)) return fail("p is not in Phi_sigma");
        break;
    case WitnessRing::Kind::pair:
        if (w.ring.sigma == GaloisLabel{-1, -1} || !in_Psi(ctx, w.ring.p, w.ring.q, w.ring.sigma))
            return fail("(p, q) is not in Psi");
        break;
    }
    return true;
}

Verdict decide_integrality(RayContext const& ctx, NfElem const& t)
{
    auto const& K = ctx.K;
    if (t.is_zero() || K.is_integral(t)) return {true, std::nullopt};
    std::optional<Place> p0;
    for (auto const& [P, e] : factor_ideal(K, t))
        if (e < 0) {
            p0 = P;
            break;
        }
    if (!p0) throw invariant_violation("non-integral element without a pole");
    Witness w;
    w.t = t;
    w.bad_prime = *p0;
    w.ring = ring_for(ctx, *p0);
    w.y = t.inverse();
    for (auto const& P : w.ring.delta) w.valuations.emplace_back(P, val(K, w.y, P));
    std::string why;
    if (!verify_witness(ctx, w, &why)) throw invariant_violation("witness for " + to_string(t) + " failed: " + why);
    return {false, w};
}

std::string context_hash(RayContext const& ctx)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : ctx.serialize()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string Witness::serialize(RayContext const& ctx) const
{
    std::ostringstream os;
    os << "field = " << ctx.K.spec() << "\n";
    os << "ctx = " << context_hash(ctx) << "\n";
    os << "t = " << t << "\n";
    os << "bad_prime = " << bad_prime.name() << "\n";
    switch (ring.kind) {
    case WitnessRing::Kind::local:
        os << "kind = local\n";
        os << "place = " << ring.place->name() << "\n";
        break;
    case WitnessRing::Kind::sigma:
        os << "kind = sigma\n";
        os << "sigma = " << ring.sigma.to_string() << "\n";
        os << "p = " << ring.p << "\n";
        break;
    case WitnessRing::Kind::pair:
        os << "kind = pair\n";
        if (!ring.sigma.trivial()) os << "sigma = " << ring.sigma.to_string() << "\n";
        os << "p = " << ring.p << "\n";
        os << "q = " << ring.q << "\n";
        break;
    }
    os << "delta = " << join(ring.delta) << "\n";
    os << "y = " << y << "\n";
    for (auto const& [P, v] : valuations) os << "v(" << P.name() << ") = " << v << "\n";
    return os.str();
}

Witness Witness::parse(RayContext const& ctx, std::string const& text)
{
    auto const& K = ctx.K;
    std::map<std::string, std::string> kv;
    std::vector<std::pair<std::string, std::string>> vals;
    std::istringstream is(text);
    std::string line;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.rfind('=');
        if (eq == std::string::npos) throw domain_error("witness line without '=': " + line);
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (k.size() > 3 && k.substr(0, 2) == "v(" && k.back() == ')')
            vals.emplace_back(k.substr(2, k.size() - 3), v);
        else
            kv[k] = v;
    }
    auto need = [&](char const* k) -> std::string const& {
        if (!kv.count(k)) throw domain_error(std::string("witness lacks '") + k + "'");
        return kv[k];
    };
    if (need("field") != K.spec()) throw domain_error("witness is for field " + kv["field"]);
    if (need("ctx") != context_hash(ctx)) throw domain_error("witness was made for another context");
    Witness w;
    w.t = K.parse_elem(need("t"));
    w.bad_prime = parse_place(K, need("bad_prime"));
    std::string kind = need("kind");
    if (kind == "local") {
        w.ring.kind = WitnessRing::Kind::local;
        w.ring.place = parse_place(K, need("place"));
    } else if (kind == "sigma") {
        w.ring.kind = WitnessRing::Kind::sigma;
        w.ring.sigma = GaloisLabel::parse(need("sigma"));
        w.ring.p = K.parse_elem(need("p"));
    } else if (kind == "pair") {
        w.ring.kind = WitnessRing::Kind::pair;
        if (kv.count("sigma")) w.ring.sigma = GaloisLabel::parse(kv["sigma"]);
        w.ring.p = K.parse_elem(need("p"));
        w.ring.q = K.parse_elem(need("q"));
    } else {
        throw domain_error("unknown witness kind '" + kind + "'");
    }
    std::string d = need("delta");
    std::size_t pos = 0;
    while (pos <= d.size() && !d.empty()) {
        auto semi = d.find(';', pos);
        std::string part = trim(d.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
        if (!part.empty()) w.ring.delta.push_back(parse_place(K, part));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    std::sort(w.ring.delta.begin(), w.ring.delta.end());
    w.y = K.parse_elem(need("y"));
    for (auto const& [P, v] : vals) w.valuations.emplace_back(parse_place(K, P), std::stoi(v));
    return w;
}

}  // namespace univint
