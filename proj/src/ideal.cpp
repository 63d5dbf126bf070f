#include "univint/ideal.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "field_cache.hpp"
#include "univint/errors.hpp"

namespace univint {

namespace {

Int igcd(Int const& a, Int const& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int ilcm(Int const& a, Int const& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int imod(Int const& a, Int const& m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::pair<Int, Int> coords(NfElem const& x) { return {Int(x.c0()), Int(x.c1())}; }

}  // namespace

Ideal Ideal::from_lattice(FieldTag tag, std::vector<std::pair<Int, Int>> const& gens, Int den)
{
    Ideal I;
    I.tag_ = tag;
    Int A = 0, B = 0, C = 0;
    for (auto const& [u, v] : gens) {
        if (v == 0) {
            A = igcd(A, u);
        } else if (C == 0) {
            B = u;
            C = v;
        } else {
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), C.get_mpz_t(), v.get_mpz_t());
            Int rem = (v / g) * B - (C / g) * u;
            A = igcd(A, rem);
            B = s * B + t * u;
            C = g;
        }
    }
    if (tag.d == 1) {
        if (C != 0) throw invariant_violation("w-coordinate in an ideal of Q");
        C = 1;
    }
    if (A == 0 || C == 0) throw domain_error("zero ideal");
    if (C < 0) {
        B = -B;
        C = -C;
    }
    A = abs(A);
    B = imod(B, A);
    if (tag.d == 1) B = 0;
    Int g = tag.d == 1 ? igcd(A, den) : igcd(igcd(A, den), igcd(B, C));
    I.a_ = A / g;
    I.b_ = B / g;
    I.c_ = tag.d == 1 ? Int(1) : Int(C / g);
    I.den_ = den / g;
    return I;
}

Ideal Ideal::unit(FieldCtx const& K) { return principal(K, K.one()); }

Ideal Ideal::principal(FieldCtx const& K, NfElem const& x) { return generated(K, {x}); }

Ideal Ideal::generated(FieldCtx const& K, std::vector<NfElem> const& gens)
{
    Int D = 1;
    for (auto const& x : gens) D = ilcm(D, x.denominator());
    std::vector<std::pair<Int, Int>> lat;
    for (auto const& x : gens) {
        NfElem y = x * Rat(D);
        lat.push_back(coords(y));
        if (!K.is_rational()) lat.push_back(coords(y * K.omega()));
    }
    return from_lattice(K.tag(), lat, D);
}

Ideal Ideal::prime(FieldCtx const& K, Place const& P)
{
    if (!P.is_finite()) throw domain_error("ideal of an archimedean place");
    NfElem p = K.elem(Rat(Int(static_cast<long>(P.p))));
    if (K.is_rational() || P.f == 2) return principal(K, p);
    return generated(K, {p, K.omega() - K.elem(Rat(Int(static_cast<long>(P.r))))});
}

Ideal Ideal::from_factorization(FieldCtx const& K, Factorization const& f)
{
    Ideal I = unit(K);
    for (auto const& [P, e] : f) I = I * prime(K, P).pow(e);
    return I;
}

std::vector<NfElem> Ideal::basis(FieldCtx const& K) const
{
    Rat inv(1);
    inv /= Rat(den_);
    if (rational()) return {K.elem(Rat(a_) * inv)};
    return {K.elem(Rat(a_) * inv), K.elem(Rat(b_) * inv, Rat(c_) * inv)};
}

Ideal Ideal::operator*(Ideal const& o) const
{
    if (!(tag_ == o.tag_)) throw domain_error("ideals of different fields");
    if (rational()) return from_lattice(tag_, {{a_ * o.a_, 0}}, den_ * o.den_);
    NfElem e[2] = {NfElem(tag_, Rat(a_)), NfElem(tag_, Rat(b_), Rat(c_))};
    NfElem f[2] = {NfElem(tag_, Rat(o.a_)), NfElem(tag_, Rat(o.b_), Rat(o.c_))};
    std::vector<std::pair<Int, Int>> lat;
    for (auto const& x : e)
        for (auto const& y : f) lat.push_back(coords(x * y));
    return from_lattice(tag_, lat, den_ * o.den_);
}

Ideal Ideal::conj() const
{
    if (rational()) return *this;
    NfElem g = NfElem(tag_, Rat(b_), Rat(c_)).conj();
    return from_lattice(tag_, {{a_, 0}, coords(g)}, den_);
}

Ideal Ideal::inverse() const
{
    if (rational()) return from_lattice(tag_, {{den_, 0}}, a_);
    // I * conj(I) = (N(I))
    Rat n = norm();
    Ideal J = conj();
    Int num(n.get_num()), dd(n.get_den());
    return from_lattice(tag_, {{J.a_ * dd, 0}, {J.b_ * dd, J.c_ * dd}}, J.den_ * num);
}

Ideal Ideal::pow(long k) const
{
    if (k < 0) return inverse().pow(-k);
    Ideal r = from_lattice(tag_, {{1, 0}, {0, rational() ? Int(0) : Int(1)}}, 1);
    Ideal b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

Rat Ideal::norm() const
{
    Rat r(a_ * (rational() ? Int(1) : c_));
    r /= Rat(rational() ? den_ : Int(den_ * den_));
    return r;
}

bool Ideal::contains(NfElem const& x) const
{
    if (!(x.tag() == tag_)) throw domain_error("element and ideal of different fields");
    NfElem y = x * Rat(den_);
    if (y.denominator() != 1) return false;
    Int u(y.c0()), v(y.c1());
    if (rational()) return u % a_ == 0;
    if (v % c_ != 0) return false;
    return (u - (v / c_) * b_) % a_ == 0;
}

int Ideal::valuation(FieldCtx const& K, Place const& P) const
{
    int best = 1 << 29;
    for (auto const& x : basis(K))
        if (!x.is_zero()) best = std::min(best, univint::valuation(K, x, P));
    return best;
}

Factorization Ideal::factor(FieldCtx const& K) const
{
    Rat n = norm();
    std::vector<Int> primes;
    for (auto const& [p, e] : arith::factor(Int(n.get_num()))) primes.push_back(p);
    for (auto const& [p, e] : arith::factor(Int(n.get_den()))) primes.push_back(p);
    // den may contribute primes whose norm contributions cancel
    for (auto const& [p, e] : arith::factor(den_)) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    Factorization out;
    for (auto const& p : primes)
        for (auto const& P : places_above(K, p)) {
            int v = valuation(K, P);
            if (v != 0) out.emplace_back(P, v);
        }
    std::sort(out.begin(), out.end(), [](auto const& x, auto const& y) { return x.first < y.first; });
    return out;
}

std::string Ideal::to_string() const
{
    std::ostringstream os;
    if (rational()) {
        os << "(" << a_ << ")";
    } else {
        os << "[" << a_ << ", " << NfElem(tag_, Rat(b_), Rat(c_)) << "]";
    }
    if (den_ != 1) os << "/" << den_;
    return os.str();
}

std::optional<NfElem> is_principal(FieldCtx const& K, Ideal const& I, long max_window)
{
    Rat inv(1);
    inv /= Rat(I.den());
    if (K.is_rational()) return K.elem(Rat(I.a()) * inv);
    Int N = I.a() * I.c();
    Int T = K.half_basis() ? 1 : 0;
    Int Nw = K.half_basis() ? Int(-(K.d() - 1) / 4) : Int(-K.d());
    Int Delta = T * T - 4 * Nw;
    double Nd = N.get_d();
    double dd = std::fabs(static_cast<double>(K.d()));
    double vmax;
    if (K.is_imaginary()) {
        vmax = 2.0 * std::sqrt(Nd / dd);
    } else {
        auto [A, B] = K.fundamental_unit()->sqrt_coords();
        double eps = std::fabs(A.get_d()) + std::fabs(B.get_d()) * std::sqrt(dd);
        vmax = 2.0 * std::sqrt(Nd * eps / dd);
    }
    double ymax_d = vmax / I.c().get_d() + 2;
    if (ymax_d > static_cast<double>(max_window))
        throw search_exhausted("principality window too large for " + I.to_string());
    long ymax = static_cast<long>(ymax_d);
    std::vector<int> signs = K.is_imaginary() ? std::vector<int>{1} : std::vector<int>{1, -1};
    for (long y = -ymax; y <= ymax; ++y) {
        Int v = Int(y) * I.c();
        for (int s : signs) {
            Int disc = Delta * v * v + 4 * s * N;
            if (disc < 0 || !arith::is_square(disc)) continue;
            Int r;
            mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
            for (int pm : {1, -1}) {
                Int num = -T * v + pm * r;
                if (num % 2 != 0) continue;
                Int u = num / 2;
                if ((u - Int(y) * I.b()) % I.a() != 0) continue;
                NfElem alpha = K.elem(Rat(u), Rat(v));
                if (alpha.is_zero()) continue;
                NfElem g = alpha * inv;
                if (!(Ideal::principal(K, g) == I)) throw invariant_violation("principal generator mismatch");
                return g;
            }
        }
    }
    return std::nullopt;
}

namespace {

std::optional<std::size_t> find_class(FieldCtx const& K, std::vector<Ideal> const& reps, Ideal const& I)
{
    for (std::size_t k = 0; k < reps.size(); ++k)
        if (is_principal(K, I * reps[k].conj())) return k;
    return std::nullopt;
}

}  // namespace

std::vector<Ideal> const& class_group(FieldCtx const& K)
{
    auto& cache = K.cache();
    {
        std::lock_guard<std::mutex> lk(cache.mu);
        if (cache.class_group) return *static_cast<std::vector<Ideal> const*>(cache.class_group.get());
    }
    std::vector<Ideal> reps{Ideal::unit(K)};
    if (!K.is_rational()) {
        Int MB = K.minkowski_bound();
        std::vector<Ideal> gens;
        for (auto p : arith::primes_up_to(arith::to_i64(MB)))
            for (auto const& P : places_above(K, p))
                if (P.norm() <= MB) gens.push_back(Ideal::prime(K, P));
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (auto const& g : gens) {
                Ideal J = reps[i] * g;
                if (!find_class(K, reps, J)) reps.push_back(J);
            }
    }
    auto sp = std::make_shared<std::vector<Ideal> const>(std::move(reps));
    std::lock_guard<std::mutex> lk(cache.mu);
    if (!cache.class_group) cache.class_group = sp;
    return *static_cast<std::vector<Ideal> const*>(cache.class_group.get());
}

std::size_t class_index(FieldCtx const& K, Ideal const& I)
{
    auto const& reps = class_group(K);
    auto k = find_class(K, reps, I);
    if (!k) throw invariant_violation("ideal " + I.to_string() + " matches no class representative");
    return *k;
}

}  // namespace univint
