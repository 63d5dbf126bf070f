#include "univint/class_field.hpp"

#include <algorithm>
#include <sstream>

#include "univint/errors.hpp"

namespace univint {

namespace {

PlaceSet intersect(PlaceSet const& x, PlaceSet const& y)
{
    PlaceSet out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

std::string trim(std::string s)
{
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::string factorization_text(Factorization const& f)
{
    std::string out;
    for (auto const& [P, e] : f) {
        if (!out.empty()) out += "; ";
        out += P.name() + "^" + std::to_string(e);
    }
    return out;
}

}  // namespace

Modulus Modulus::make(FieldCtx const& K, NfElem const& m0_generator, bool all_real)
{
    if (!K.is_integral(m0_generator) || m0_generator.is_zero()) throw domain_error("modulus must be a nonzero integral element");
    Modulus m;
    m.m0 = Ideal::principal(K, m0_generator);
    m.m0_factors = factor_ideal(K, m0_generator);
    if (all_real)
        for (auto const& P : infinite_places(K))
            if (P.is_real()) m.real_places.push_back(P);
    return m;
}

bool Modulus::divides(Place const& P) const { return exponent(P) > 0; }

int Modulus::exponent(Place const& P) const
{
    for (auto const& [Q, e] : m0_factors)
        if (Q == P) return e;
    return 0;
}

bool in_K_m1(FieldCtx const& K, NfElem const& x, Modulus const& m)
{
    if (x.is_zero()) throw domain_error("in_K_m1: zero");
    NfElem y = x - K.one();
    for (auto const& [P, e] : m.m0_factors)
        if (!y.is_zero() && valuation(K, y, P) < e) return false;
    for (auto const& P : m.real_places)
        if (K.real_sign(x, K.is_rational() ? 1 : P.sign) < 0) return false;
    return true;
}

int power_residue_symbol(FieldCtx const& K, NfElem const& x, Place const& P)
{
    if (!P.is_finite()) throw domain_error("power residue symbol at an archimedean place");
    if (P.is_dyadic()) throw domain_error("power residue symbol at a dyadic place");
    if (x.is_zero() || valuation(K, x, P) != 0) throw domain_error("power residue symbol needs a unit at " + P.name());
    auto r = reduce(K, x, P);
    return r.field.quadratic_character(r.value);
}

std::string GaloisLabel::to_string() const
{
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

GaloisLabel GaloisLabel::parse(std::string const& s)
{
    std::string t;
    for (char c : s)
        if (c != ' ' && c != '(' && c != ')' && c != '[' && c != ']') t += c;
    auto comma = t.find(',');
    if (comma == std::string::npos) throw domain_error("cannot parse label '" + s + "'");
    auto sign = [&](std::string const& u) {
        if (u == "1" || u == "+1") return 1;
        if (u == "-1") return -1;
        throw domain_error("cannot parse label '" + s + "'");
    };
    return {sign(t.substr(0, comma)), sign(t.substr(comma + 1))};
}

std::vector<GaloisLabel> GaloisLabel::all() { return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}; }

PairCheck check_pair(FieldCtx const& K, NfElem const& a, NfElem const& b, long norm_bound, bool check3)
{
    PairCheck c;
    if (a.is_zero() || b.is_zero()) {
        c.failure = "(1) a and b must be nonzero";
        return c;
    }
    c.independent = !K.sqrt(a) && !K.sqrt(b) && !K.sqrt(a * b);
    c.one_mod_8 = K.is_integral((a - K.one()) * Rat(1, 8)) && K.is_integral((b - K.one()) * Rat(1, 8));
    c.totally_positive = K.is_totally_positive(a) && K.is_totally_positive(b);
    if (c.one_mod_8) {
        auto fa = factor_ideal(K, a), fb = factor_ideal(K, b);
        c.coprime = true;
        for (auto const& [P, e] : fa)
            for (auto const& [Q, f] : fb)
                if (P == Q) c.coprime = false;
    }
    if (!c.independent)
        c.failure = "(1) a, b, ab must all be non-squares";
    else if (!c.one_mod_8)
        c.failure = "(2) a and b must lie in 1 + 8O";
    else if (!c.coprime)
        c.failure = "(4) (a) and (b) share a prime";
    else if (!c.totally_positive)
        c.failure = "(5) a and b must be totally positive";
    if (!c.failure.empty() || !check3) return c;

    RayContext ctx{K, a, b, Modulus::make(K, a * b * Rat(8), true), norm_bound};
    c.chebotarev = true;
    for (std::size_t k = 0; k < class_group(K).size() && c.chebotarev; ++k)
        for (auto s : GaloisLabel::all()) {
            try {
                find_prime(ctx, k, s);
            } catch (search_exhausted const&) {
                c.chebotarev = false;
                c.failure = "(3) no prime of norm <= " + std::to_string(norm_bound) + " in class " + std::to_string(k) +
                            " with label " + s.to_string();
                break;
            }
        }
    return c;
}

RayContext make_context(FieldCtx const& K, NfElem const& a, NfElem const& b, long norm_bound)
{
    if (norm_bound < 2) throw domain_error("norm bound must be at least 2");
    auto c = check_pair(K, a, b, norm_bound, false);
    if (!c.ok()) throw domain_error("pair (" + to_string(a) + ", " + to_string(b) + ") fails " + c.failure);
    return RayContext{K, a, b, Modulus::make(K, a * b * Rat(8), true), norm_bound};
}

RayContext select_ab(FieldCtx const& K, long norm_bound)
{
    // 1 + 8y generating a prime ideal, totally positive, smallest norm first
    std::vector<NfElem> cands;
    long h = K.is_rational() ? 40 : 4;
    for (long s = -h; s <= h; ++s)
        for (long t = K.is_rational() ? 0 : -h; t <= (K.is_rational() ? 0 : h); ++t) {
            NfElem x = K.elem(1 + 8 * s, 8 * t);
            if (x.is_zero() || !K.is_totally_positive(x)) continue;
            auto f = factor_ideal(K, x);
            if (f.size() == 1 && f[0].second == 1) cands.push_back(x);
        }
    std::stable_sort(cands.begin(), cands.end(), [](NfElem const& x, NfElem const& y) {
        Rat nx = abs(x.norm()), ny = abs(y.norm());
        if (nx != ny) return nx < ny;
        return x < y;
    });
    for (std::size_t j = 1; j < cands.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (check_pair(K, cands[i], cands[j], norm_bound).ok()) return make_context(K, cands[i], cands[j], norm_bound);
    throw search_exhausted("select_ab: no admissible pair among " + std::to_string(cands.size()) + " candidates");
}

GaloisLabel artin_label(RayContext const& ctx, Place const& P)
{
    if (!P.is_finite()) throw domain_error("artin_label needs a finite place");
    if (ctx.modulus.divides(P)) throw domain_error("artin_label: " + P.name() + " divides the modulus");
    return {power_residue_symbol(ctx.K, ctx.a, P), power_residue_symbol(ctx.K, ctx.b, P)};
}

GaloisLabel artin_label_ideal(RayContext const& ctx, Factorization const& f)
{
    GaloisLabel g;
    for (auto const& [P, e] : f) {
        auto l = artin_label(ctx, P);
        if (e % 2 != 0) g = g * l;
    }
    return g;
}

PlaceSet PrimePartition::odd_support() const
{
    PlaceSet out = on_modulus;
    for (auto const& [l, s] : parts) out.insert(out.end(), s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

PrimePartition prime_partition(RayContext const& ctx, NfElem const& p)
{
    if (p.is_zero()) throw domain_error("prime_partition: zero");
    PrimePartition out;
    for (auto l : GaloisLabel::all()) out.parts[l];
    for (auto const& [P, e] : factor_ideal(ctx.K, p)) {
        if (e % 2 == 0) continue;
        if (ctx.modulus.divides(P))
            out.on_modulus.push_back(P);
        else
            out.parts[artin_label(ctx, P)].push_back(P);
    }
    return out;
}

std::vector<Place> primes_by_norm(FieldCtx const& K, long bound)
{
    std::vector<Place> out;
    for (auto p : arith::primes_up_to(bound))
        for (auto const& P : places_above(K, p))
            if (P.norm() <= bound) out.push_back(P);
    std::stable_sort(out.begin(), out.end(), [](Place const& x, Place const& y) { return x.norm() < y.norm(); });
    return out;
}

Place find_prime(RayContext const& ctx, std::size_t cls, GaloisLabel sigma, PlaceSet const& exclude, long norm_bound)
{
    long bound = norm_bound > 0 ? norm_bound : ctx.norm_bound;
    auto const& reps = class_group(ctx.K);
    if (cls >= reps.size()) throw domain_error("no ideal class " + std::to_string(cls));
    for (auto const& P : primes_by_norm(ctx.K, bound)) {
        if (ctx.modulus.divides(P)) continue;
        if (std::find(exclude.begin(), exclude.end(), P) != exclude.end()) continue;
        if (!(artin_label(ctx, P) == sigma)) continue;
        if (reps.size() > 1 && class_index(ctx.K, Ideal::prime(ctx.K, P)) != cls) continue;
        return P;
    }
    throw search_exhausted("find_prime: no prime in class " + std::to_string(cls) + " with label " + sigma.to_string() +
                           " of norm <= " + std::to_string(bound));
}

bool same_ray_class(RayContext const& ctx, NfElem const& x, NfElem const& y)
{
    auto const& K = ctx.K;
    NfElem z = x / y;
    std::vector<NfElem> eps_powers{K.one()};
    if (auto const& eps = K.fundamental_unit()) {
        // powers of eps up to the first one already in K_{m,1}
        NfElem e = *eps;
        for (int k = 1;; ++k) {
            if (k > 10000) throw search_exhausted("same_ray_class: unit order beyond 10000");
            if (in_K_m1(K, e, ctx.modulus)) break;
            eps_powers.push_back(e);
            e = e * *eps;
        }
    }
    for (auto const& zeta : K.roots_of_unity())
        for (auto const& u : eps_powers)
            if (in_K_m1(K, z * zeta * u, ctx.modulus)) return true;
    return false;
}

IdentificationReport exact_identification_audit(RayContext const& ctx, NfElem const& p)
{
    auto const& K = ctx.K;
    if (p.is_zero()) throw domain_error("identification audit: zero");
    for (auto const& [P, e] : factor_ideal(K, p))
        if (ctx.modulus.divides(P)) throw domain_error("identification audit: (p) meets the modulus at " + P.name());
    auto part = prime_partition(ctx, p);
    auto da = delta_set(K, ctx.a, p), db = delta_set(K, ctx.b, p), dab = delta_set(K, ctx.a * ctx.b, p);
    IdentificationReport rep;
    rep.rows.push_back({{-1, -1}, part.parts[{-1, -1}], intersect(da, db)});
    rep.rows.push_back({{-1, 1}, part.parts[{-1, 1}], intersect(da, dab)});
    rep.rows.push_back({{1, -1}, part.parts[{1, -1}], intersect(db, dab)});
    for (auto const& r : rep.rows)
        if (r.by_label != r.by_symbols) rep.ok = false;
    return rep;
}

std::string RayContext::serialize() const
{
    std::ostringstream os;
    os << "field = " << K.spec() << "\n";
    os << "a = " << a << "\n";
    os << "b = " << b << "\n";
    os << "m0 = " << factorization_text(modulus.m0_factors) << "\n";
    std::string real;
    for (auto const& P : modulus.real_places) real += (real.empty() ? "" : " ") + P.name();
    os << "real = " << real << "\n";
    os << "norm_bound = " << norm_bound << "\n";
    return os.str();
}

RayContext RayContext::parse(std::string const& text)
{
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw domain_error("context line without '=': " + line);
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    for (char const* key : {"field", "a", "b"})
        if (!kv.count(key)) throw domain_error(std::string("context lacks '") + key + "'");
    auto K = FieldCtx::parse(kv["field"]);
    long bound = kv.count("norm_bound") ? std::stol(kv["norm_bound"]) : 10000;
    auto ctx = make_context(K, K.parse_elem(kv["a"]), K.parse_elem(kv["b"]), bound);
    if (kv.count("m0") && kv["m0"] != factorization_text(ctx.modulus.m0_factors))
        throw domain_error("context m0 '" + kv["m0"] + "' does not match (8ab) = " +
                           factorization_text(ctx.modulus.m0_factors));
    return ctx;
}

}  // namespace univint
