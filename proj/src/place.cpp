#include "univint/place.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "field_cache.hpp"
#include "univint/errors.hpp"

namespace univint {

namespace {

// w^2 = T*w - Nw
Int trace_w(FieldCtx const& K) { return K.half_basis() ? 1 : 0; }
Int norm_w(FieldCtx const& K)
{
    Int d(static_cast<long>(K.d()));
    return K.half_basis() ? Int(-(d - 1) / 4) : Int(-d);
}

Int ipow(std::int64_t p, int k)
{
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
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
        throw invariant_violation("expected a unit modulo " + m.get_str());
    return r;
}

// integral coordinates of D*x, D = common denominator
std::pair<NfElem, Int> split_denominator(NfElem const& x)
{
    Int D = x.denominator();
    return {x * Rat(D), D};
}

}  // namespace

Int Place::norm() const
{
    if (kind != Kind::finite) return 1;
    return ipow(p, f);
}

std::string Place::name() const
{
    switch (kind) {
    case Kind::real:
        if (rational) return "inf";
        return sign > 0 ? "real+" : "real-";
    case Kind::complex:
        return "complex";
    case Kind::finite:
        break;
    }
    if (rational) return std::to_string(p);
    if (f == 2) return "(" + std::to_string(p) + ")";
    if (r == 0) return "(" + std::to_string(p) + ", w)";
    return "(" + std::to_string(p) + ", w - " + std::to_string(r) + ")";
}

bool Place::operator<(Place const& o) const
{
    return std::make_tuple(static_cast<int>(kind), p, r, -sign) <
           std::make_tuple(static_cast<int>(o.kind), o.p, o.r, -o.sign);
}

Int hensel_root(FieldCtx const& K, std::int64_t p, std::int64_t r, int k)
{
    Int T = trace_w(K), Nw = norm_w(K);
    Int pk = ipow(p, k);
    Int x = r;
    for (int it = 0; it < 2 * k + 4; ++it) {
        Int fx = imod(x * x - T * x + Nw, pk);
        if (fx == 0) return imod(x, pk);
        Int dfx = imod(2 * x - T, pk);
        x = imod(x - fx * iinv(dfx, pk), pk);
    }
    throw invariant_violation("Hensel lifting of a simple root did not converge");
}

std::vector<Place> const& places_above(FieldCtx const& K, std::int64_t p)
{
    if (p < 2 || !arith::is_prime(p)) throw domain_error(std::to_string(p) + " is not a prime");
    FieldCache& C = K.cache();
    {
        std::lock_guard<std::mutex> lk(C.mu);
        auto it = C.places.find(p);
        if (it != C.places.end()) return it->second;
    }
    std::vector<Place> res;
    Place base;
    base.kind = Place::Kind::finite;
    base.p = p;
    if (K.is_rational()) {
        base.rational = true;
        base.beta = K.one();
        res.push_back(base);
    } else {
        int k = arith::kronecker(K.disc(), p);
        std::int64_t d = K.d();
        if (k == -1) {
            base.f = 2;
            base.beta = K.one();
            res.push_back(base);
        } else if (k == 0) {
            base.e = 2;
            if (p == 2) {
                if (arith::mod(d, 4) == 2) {
                    base.r = 0;
                    base.beta = K.omega();
                } else {
                    base.r = 1;
                    base.beta = K.one() + K.omega();
                }
            } else {
                base.r = K.half_basis() ? (p + 1) / 2 : 0;
                base.beta = K.sqrt_d();
            }
            res.push_back(base);
        } else {
            std::int64_t r1, r2;
            if (p == 2) {
                r1 = 0;
                r2 = 1;
            } else {
                std::int64_t s = arith::sqrt_mod(arith::mod(d, p), p);
                if (K.half_basis()) {
                    std::int64_t h = arith::invmod(2, p);
                    r1 = arith::mulmod(arith::mod(1 + s, p), h, p);
                    r2 = arith::mulmod(arith::mod(1 - s, p), h, p);
                } else {
                    r1 = s;
                    r2 = arith::mod(-s, p);
                }
                if (r1 > r2) std::swap(r1, r2);
            }
            for (auto [r, rbar] : {std::pair{r1, r2}, std::pair{r2, r1}}) {
                Place P = base;
                P.r = r;
                P.beta = K.omega() - K.elem(Rat(Int(static_cast<long>(rbar))));
                res.push_back(P);
            }
        }
    }
    std::lock_guard<std::mutex> lk(C.mu);
    auto [it, inserted] = C.places.emplace(p, std::move(res));
    return it->second;
}

std::vector<Place> places_above(FieldCtx const& K, Int const& p)
{
    return places_above(K, arith::to_i64(p));
}

std::vector<Place> infinite_places(FieldCtx const& K)
{
    Place P;
    if (K.is_imaginary()) {
        P.kind = Place::Kind::complex;
        return {P};
    }
    P.kind = Place::Kind::real;
    if (K.is_rational()) {
        P.rational = true;
        return {P};
    }
    Place Q = P;
    Q.sign = -1;
    return {P, Q};
}

Place conjugate_place(FieldCtx const& K, Place const& P)
{
    if (!P.is_finite()) return P;
    for (auto const& Q : places_above(K, P.p))
        if (Q != P) return Q;
    return P;
}

Place parse_place(FieldCtx const& K, std::string const& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto bad = [&]() -> Place { throw domain_error("cannot parse place '" + text + "'"); };
    if (s == "inf" || s == "oo" || s == "∞") {
        if (!K.is_rational()) return bad();
        return infinite_places(K)[0];
    }
    if (s == "real+" || s == "real-") {
        if (!K.is_real()) throw domain_error("field has no place '" + s + "'");
        return infinite_places(K)[s == "real+" ? 0 : 1];
    }
    if (s == "complex") {
        if (!K.is_imaginary()) throw domain_error("field has no complex place");
        return infinite_places(K)[0];
    }
    std::string body = s;
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') return bad();
        body = body.substr(1, body.size() - 2);
    }
    std::string ps = body, rest;
    auto comma = body.find(',');
    if (comma != std::string::npos) {
        ps = body.substr(0, comma);
        rest = body.substr(comma + 1);
    }
    Int p;
    if (ps.empty() || p.set_str(ps, 10) != 0 || p < 2) return bad();
    auto const& Ps = places_above(K, arith::to_i64(p));
    if (rest.empty()) {
        if (Ps.size() != 1) throw domain_error("place '" + text + "' is ambiguous: p splits");
        return Ps[0];
    }
    // w, w-r, w+r
    if (rest.empty() || rest[0] != 'w') return bad();
    Int r = 0;
    if (rest.size() > 1) {
        char sg = rest[1];
        if (sg != '-' && sg != '+') return bad();
        if (r.set_str(rest.substr(2), 10) != 0) return bad();
        if (sg == '+') r = -r;
    }
    std::int64_t rr = arith::mod(r, Ps[0].p);
    for (auto const& P : Ps)
        if (P.f == 1 && P.r == rr) return P;
    throw domain_error("no prime " + text + " in " + K.spec());
}

namespace {

// v_P of a nonzero integral element
int int_valuation(FieldCtx const& K, NfElem n, Place const& P)
{
    Int pz(static_cast<long>(P.p));
    if (K.is_rational()) return arith::valuation(Int(n.c0()), pz);
    if (P.f == 2) {
        int v0 = n.c0() == 0 ? INT32_MAX : arith::valuation(Int(n.c0()), pz);
        int v1 = n.c1() == 0 ? INT32_MAX : arith::valuation(Int(n.c1()), pz);
        return std::min(v0, v1);
    }
    int k = 0;
    Rat inv_p(1, pz);
    for (;;) {
        Int red = Int(n.c0()) + Int(n.c1()) * P.r;
        if (!mpz_divisible_p(red.get_mpz_t(), pz.get_mpz_t())) return k;
        n = n * P.beta * inv_p;
        ++k;
    }
}

}  // namespace

int valuation(FieldCtx const& K, NfElem const& x, Place const& P)
{
    if (!P.is_finite()) throw domain_error("valuation at an archimedean place");
    if (x.is_zero()) throw domain_error("valuation of zero");
    auto [n, D] = split_denominator(x);
    return int_valuation(K, n, P) - P.e * arith::valuation(D, Int(static_cast<long>(P.p)));
}

std::vector<Int> norm_primes(FieldCtx const& K, NfElem const& x)
{
    if (x.is_zero()) throw domain_error("factorization of zero");
    auto [n, D] = split_denominator(x);
    std::vector<Int> ps;
    Rat Nn = n.norm();
    for (auto const& [p, k] : arith::factor(Int(Nn.get_num()))) ps.push_back(p);
    if (D != 1)
        for (auto const& [p, k] : arith::factor(D)) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    (void)K;
    return ps;
}

Factorization factor_ideal(FieldCtx const& K, NfElem const& x)
{
    Factorization res;
    for (auto const& p : norm_primes(K, x)) {
        for (auto const& P : places_above(K, p)) {
            int v = valuation(K, x, P);
            if (v != 0) res.emplace_back(P, v);
        }
    }
    return res;
}

NfElem uniformizer(FieldCtx const& K, Place const& P)
{
    if (!P.is_finite()) throw domain_error("uniformizer at an archimedean place");
    if (K.is_rational() || P.f == 2) return K.elem(Rat(Int(static_cast<long>(P.p))));
    if (P.e == 2) return P.beta;
    NfElem pi = K.omega() - K.elem(Rat(Int(static_cast<long>(P.r))));
    if (valuation(K, pi, P) != 1) pi = pi - K.elem(Rat(Int(static_cast<long>(P.p))));
    return pi;
}

FiniteField residue_field(FieldCtx const& K, Place const& P)
{
    if (!P.is_finite()) throw domain_error("residue field of an archimedean place");
    if (P.f == 1) return FiniteField(P.p, 1, {});
    return FiniteField(P.p, 2, {arith::mod(Int(-norm_w(K)), P.p), arith::mod(trace_w(K), P.p), 0});
}

PIntegralParts p_integral_parts(FieldCtx const& K, NfElem const& x, Place const& P)
{
    auto [n, D] = split_denominator(x);
    Int pz(static_cast<long>(P.p));
    int j = arith::valuation(D, pz);
    if (j == 0) return {n, K.one(), D};
    Int Dp = D;
    for (int i = 0; i < j; ++i) Dp /= pz;
    NfElem bpow = P.beta.pow(P.e * j);
    NfElem num = n * bpow * Rat(1, ipow(P.p, P.e * j));
    NfElem u = bpow * Rat(1, ipow(P.p, (P.e - 1) * j));
    if (!K.is_integral(num)) throw domain_error("element has negative valuation at " + P.name());
    return {num, u, Dp};
}

ResidueFieldElem reduce(FieldCtx const& K, NfElem const& x, Place const& P)
{
    FiniteField F = residue_field(K, P);
    ResidueFieldElem res{F, F.zero()};
    if (x.is_zero()) return res;
    auto parts = p_integral_parts(K, x, P);
    auto img = [&](NfElem const& y) -> FiniteField::Elem {
        if (P.f == 2) return {arith::mod(Int(y.c0()), P.p), arith::mod(Int(y.c1()), P.p), 0};
        Int v = Int(y.c0()) + Int(y.c1()) * P.r;
        return F.from_int(v);
    };
    FiniteField::Elem num = img(parts.num), u = img(parts.unit), d = F.from_int(parts.den);
    res.value = F.mul(num, F.inv(F.mul(u, d)));
    return res;
}

NfElem lift_residue(FieldCtx const& K, Place const& P, FiniteField::Elem const& v)
{
    if (P.f == 2) return K.elem(Rat(Int(static_cast<long>(v[0]))), Rat(Int(static_cast<long>(v[1]))));
    return K.elem(Rat(Int(static_cast<long>(v[0]))));
}

// ---------------------------------------------------------------------------

LocalRing::LocalRing(FieldCtx const& K, Place const& P, int n) : K_(&K), P_(P), n_(n)
{
    if (!P.is_finite()) throw domain_error("local ring at an archimedean place");
    if (n < 1) n_ = n = 1;
    k_ = P.split_like() ? n : (n + P.e - 1) / P.e;
    pk_ = ipow(P.p, k_);
    rho_ = 0;
    if (P.split_like() && !K.is_rational()) rho_ = hensel_root(K, P.p, P.r, k_);
}

LocalRing::Elem LocalRing::image(NfElem const& x) const
{
    if (x.is_zero()) return {0, 0};
    auto parts = p_integral_parts(*K_, x, P_);
    if (P_.split_like()) {
        Int num = Int(parts.num.c0()) + Int(parts.num.c1()) * rho_;
        Int u = Int(parts.unit.c0()) + Int(parts.unit.c1()) * rho_;
        return {imod(num * iinv(imod(u * parts.den, pk_), pk_), pk_), 0};
    }
    NfElem w = parts.num * parts.unit.conj();
    Int Nu = Int(parts.unit.norm());
    Int s = iinv(imod(Nu * parts.den, pk_), pk_);
    return {imod(Int(w.c0()) * s, pk_), imod(Int(w.c1()) * s, pk_)};
}

LocalRing::Elem LocalRing::mul(Elem const& x, Elem const& y) const
{
    if (!pairs()) return {imod(x.c0 * y.c0, pk_), 0};
    Int t = x.c1 * y.c1;
    return {imod(x.c0 * y.c0 - norm_w(*K_) * t, pk_), imod(x.c0 * y.c1 + x.c1 * y.c0 + trace_w(*K_) * t, pk_)};
}

LocalRing::Elem LocalRing::add(Elem const& x, Elem const& y) const
{
    return {imod(x.c0 + y.c0, pk_), imod(x.c1 + y.c1, pk_)};
}

LocalRing::Elem LocalRing::sub(Elem const& x, Elem const& y) const
{
    return {imod(x.c0 - y.c0, pk_), imod(x.c1 - y.c1, pk_)};
}

bool LocalRing::is_unit(Elem const& x) const
{
    Int pz(static_cast<long>(P_.p));
    if (!pairs()) return imod(x.c0, pz) != 0;
    if (P_.f == 2) return imod(x.c0, pz) != 0 || imod(x.c1, pz) != 0;
    return imod(x.c0 + x.c1 * P_.r, pz) != 0;
}

NfElem LocalRing::lift(Elem const& x) const
{
    if (!pairs()) return K_->elem(Rat(x.c0));
    return K_->elem(Rat(x.c0), Rat(x.c1));
}

}  // namespace univint
