#include "univint/field.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

#include "field_cache.hpp"
#include "univint/errors.hpp"

namespace univint {

NfElem::NfElem(FieldTag tag, Rat c0, Rat c1) : c0_(std::move(c0)), c1_(std::move(c1)), tag_(tag)
{
    c0_.canonicalize();
    c1_.canonicalize();
    if (tag_.d == 1 && c1_ != 0) throw domain_error("element of Q with a nonzero w-coordinate");
}

void NfElem::check_same(NfElem const& o) const
{
    if (!(tag_ == o.tag_)) throw domain_error("elements of different fields");
}

NfElem NfElem::operator-() const { return {tag_, -c0_, -c1_}; }

NfElem NfElem::operator+(NfElem const& o) const
{
    check_same(o);
    return {tag_, c0_ + o.c0_, c1_ + o.c1_};
}

NfElem NfElem::operator-(NfElem const& o) const
{
    check_same(o);
    return {tag_, c0_ - o.c0_, c1_ - o.c1_};
}

NfElem NfElem::operator*(NfElem const& o) const
{
    check_same(o);
    if (tag_.d == 1) return {tag_, c0_ * o.c0_, 0};
    Rat x1y1 = c1_ * o.c1_;
    Rat cross = c0_ * o.c1_ + c1_ * o.c0_;
    if (tag_.half) {
        Rat m((tag_.d - 1) / 4);
        return {tag_, c0_ * o.c0_ + m * x1y1, cross + x1y1};
    }
    return {tag_, c0_ * o.c0_ + Rat(tag_.d) * x1y1, cross};
}

NfElem NfElem::operator/(NfElem const& o) const { return *this * o.inverse(); }

bool NfElem::operator<(NfElem const& o) const
{
    if (c0_ != o.c0_) return c0_ < o.c0_;
    return c1_ < o.c1_;
}

NfElem NfElem::inverse() const
{
    if (is_zero()) throw domain_error("division by zero");
    if (tag_.d == 1) return {tag_, 1 / c0_, 0};
    Rat n = norm();
    NfElem c = conj();
    return {tag_, c.c0_ / n, c.c1_ / n};
}

NfElem NfElem::pow(long k) const
{
    if (k < 0) return inverse().pow(-k);
    NfElem r(tag_, 1), b = *this;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

NfElem NfElem::conj() const
{
    if (tag_.half) return {tag_, c0_ + c1_, -c1_};
    return {tag_, c0_, -c1_};
}

Rat NfElem::norm() const
{
    if (tag_.d == 1) return c0_;
    if (tag_.half) {
        Rat m((tag_.d - 1) / 4);
        return c0_ * c0_ + c0_ * c1_ - m * c1_ * c1_;
    }
    return c0_ * c0_ - Rat(tag_.d) * c1_ * c1_;
}

Rat NfElem::trace() const
{
    if (tag_.d == 1) return c0_;
    if (tag_.half) return 2 * c0_ + c1_;
    return 2 * c0_;
}

std::pair<Rat, Rat> NfElem::sqrt_coords() const
{
    if (tag_.half) return {c0_ + c1_ / 2, c1_ / 2};
    return {c0_, c1_};
}

Int NfElem::denominator() const
{
    Int l;
    mpz_lcm(l.get_mpz_t(), c0_.get_den_mpz_t(), c1_.get_den_mpz_t());
    return l;
}

Int NfElem::height() const
{
    Int den = denominator();
    Int a = abs(Int(c0_ * den)), b = abs(Int(c1_ * den));
    return std::max({a, b, den});
}

namespace {

void put_rat(std::ostream& os, Rat const& r)
{
    os << r.get_num();
    if (r.get_den() != 1) os << '/' << r.get_den();
}

}  // namespace

std::ostream& operator<<(std::ostream& os, NfElem const& x)
{
    Rat const& a = x.c0();
    Rat const& b = x.c1();
    if (b == 0) {
        put_rat(os, a);
        return os;
    }
    if (a != 0) {
        put_rat(os, a);
        os << (b < 0 ? " - " : " + ");
    } else if (b < 0) {
        os << '-';
    }
    Rat ab = abs(b);
    if (ab != 1) {
        put_rat(os, ab);
        os << '*';
    }
    os << 'w';
    return os;
}

// ---------------------------------------------------------------------------

FieldCtx::FieldCtx(FieldTag tag, long unit_cap) : tag_(tag), cache_(std::make_shared<FieldCache>())
{
    if (tag_.d == 1) {
        disc_ = 1;
        roots_of_unity_ = {elem(1), elem(-1)};
        return;
    }
    disc_ = tag_.half ? Int(static_cast<long>(tag_.d)) : Int(static_cast<long>(4 * tag_.d));
    roots_of_unity_ = {elem(1), elem(-1)};
    if (tag_.d == -1) {
        roots_of_unity_.push_back(omega());
        roots_of_unity_.push_back(-omega());
    } else if (tag_.d == -3) {
        // w = (1 + sqrt(-3))/2 is a primitive 6th root of unity
        NfElem z = omega();
        roots_of_unity_.clear();
        for (int k = 0; k < 6; ++k) roots_of_unity_.push_back(z.pow(k));
    }
    if (tag_.d > 1) {
        // Continued fraction of w = (P + sqrt D)/Q; the convergents h/k give
        // h - k*w of norm +-1 within one period.
        Int D(static_cast<long>(tag_.d));
        Int P = tag_.half ? 1 : 0, Q = tag_.half ? 2 : 1;
        Int hm2 = 0, hm1 = 1, km2 = 1, km1 = 0;
        Int sq;
        mpz_sqrt(sq.get_mpz_t(), D.get_mpz_t());
        for (long it = 0; it < unit_cap; ++it) {
            Int a;
            Int num = P + sq;
            mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
            Int h = a * hm1 + hm2, k = a * km1 + km2;
            hm2 = hm1;
            hm1 = h;
            km2 = km1;
            km1 = k;
            NfElem u = elem(Rat(h), Rat(-k));
            Rat n = u.norm();
            if (n == 1 || n == -1) {
                NfElem best = u;
                for (NfElem c : {u, -u, u.conj(), -u.conj()}) {
                    auto [A, B] = c.sqrt_coords();
                    if (A > 0 && B > 0) best = c;
                }
                fundamental_unit_ = best;
                break;
            }
            P = a * Q - P;
            Q = (D - P * P) / Q;
        }
        if (!fundamental_unit_)
            throw domain_error("fundamental unit: continued fraction exceeded the iteration cap");
    }
}

FieldCtx FieldCtx::rational() { return FieldCtx(FieldTag{1, false}, default_unit_cap); }

FieldCtx FieldCtx::quadratic(Int const& d, long unit_cap)
{
    if (d == 0 || d == 1) throw domain_error("Q(sqrt d) needs d not in {0, 1}");
    if (!arith::is_squarefree(d)) throw domain_error("d = " + d.get_str() + " is not squarefree");
    std::int64_t dd = arith::to_i64(d);
    bool half = arith::mod(dd, 4) == 1;
    return FieldCtx(FieldTag{dd, half}, unit_cap);
}

FieldCtx FieldCtx::parse(std::string const& spec0)
{
    std::string spec;
    for (char c : spec0)
        if (!std::isspace(static_cast<unsigned char>(c))) spec += c;
    if (spec == "Q") return rational();
    std::string pre = "Q(sqrt,";
    std::string pre2 = "Q(sqrt(";
    std::string body;
    if (spec.rfind(pre, 0) == 0 && spec.back() == ')')
        body = spec.substr(pre.size(), spec.size() - pre.size() - 1);
    else if (spec.rfind(pre2, 0) == 0 && spec.size() > pre2.size() + 2 && spec.substr(spec.size() - 2) == "))")
        body = spec.substr(pre2.size(), spec.size() - pre2.size() - 2);
    else
        throw domain_error("bad field spec '" + spec0 + "': expected Q or Q(sqrt,d)");
    Int d;
    if (body.empty() || d.set_str(body, 10) != 0) throw domain_error("bad field spec '" + spec0 + "'");
    return quadratic(d);
}

std::string FieldCtx::spec() const
{
    if (is_rational()) return "Q";
    return "Q(sqrt," + std::to_string(tag_.d) + ")";
}

std::string FieldCtx::basis_description() const
{
    if (is_rational()) return "{1}";
    std::string r = "sqrt(" + std::to_string(tag_.d) + ")";
    return tag_.half ? "{1, w}, w = (1 + " + r + ")/2" : "{1, w}, w = " + r;
}

NfElem FieldCtx::elem(Rat const& c0, Rat const& c1) const { return NfElem(tag_, c0, c1); }

NfElem FieldCtx::omega() const
{
    if (is_rational()) throw domain_error("Q has no w");
    return elem(0, 1);
}

NfElem FieldCtx::sqrt_d() const
{
    if (is_rational()) throw domain_error("Q has no sqrt(d)");
    return tag_.half ? elem(-1, 2) : elem(0, 1);
}

namespace {

struct ElemParser {
    std::string s;
    std::size_t i = 0;

    void ws()
    {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c)
    {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool digits(Int& out)
    {
        ws();
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) return false;
        out = Int(s.substr(i, j - i));
        i = j;
        return true;
    }
};

}  // namespace

NfElem FieldCtx::parse_elem(std::string const& text) const
{
    ElemParser P{text};
    Rat c0 = 0, c1 = 0;
    bool first = true;
    auto fail = [&]() -> NfElem { throw domain_error("cannot parse element '" + text + "'"); };
    for (;;) {
        P.ws();
        if (P.i >= P.s.size()) break;
        int sign = 1;
        if (P.eat('+')) {
        } else if (P.eat('-')) {
            sign = -1;
        } else if (!first) {
            return fail();
        }
        first = false;
        Rat coef = 1;
        bool have_num = false;
        Int n;
        if (P.digits(n)) {
            have_num = true;
            coef = Rat(n);
            if (P.eat('/')) {
                Int den;
                if (!P.digits(den) || den == 0) return fail();
                coef = Rat(n, den);
                coef.canonicalize();
            }
        }
        bool has_w = false;
        if (have_num && P.eat('*')) {
            if (!P.eat('w')) return fail();
            has_w = true;
        } else if (P.eat('w')) {
            has_w = true;
        }
        if (!have_num && !has_w) return fail();
        if (has_w && P.eat('/')) {
            Int den;
            if (!P.digits(den) || den == 0) return fail();
            coef /= Rat(den);
        }
        (has_w ? c1 : c0) += sign * coef;
    }
    if (first) return fail();
    if (is_rational() && c1 != 0) throw domain_error("element '" + text + "' uses w in Q");
    return elem(c0, c1);
}

std::vector<NfElem> FieldCtx::units_mod_squares() const
{
    std::vector<NfElem> gens;
    // mu_K is cyclic; Q(i) and Q(sqrt -3) are generated by w, the rest by -1
    NfElem z = roots_of_unity_.size() == 2 ? elem(-1) : omega();
    gens.push_back(z);
    if (fundamental_unit_) gens.push_back(*fundamental_unit_);
    std::vector<NfElem> res{one()};
    for (auto const& g : gens) {
        std::size_t n = res.size();
        for (std::size_t j = 0; j < n; ++j) res.push_back(res[j] * g);
    }
    return res;
}

Int FieldCtx::minkowski_bound() const
{
    if (is_rational()) return 1;
    double D = std::fabs(disc_.get_d());
    double b = is_imaginary() ? (2.0 / M_PI) * std::sqrt(D) : 0.5 * std::sqrt(D);
    long m = static_cast<long>(std::floor(b + 1e-9));
    return m < 1 ? Int(1) : Int(m);
}

bool FieldCtx::is_integral(NfElem const& x) const
{
    return x.c0().get_den() == 1 && x.c1().get_den() == 1;
}

int FieldCtx::real_sign(NfElem const& x, int s) const
{
    auto [A, B] = x.sqrt_coords();
    if (s < 0) B = -B;
    int sa = sgn(A), sb = sgn(B);
    if (is_rational() || sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // A and B*sqrt(d) of opposite signs: compare squares
    int c = cmp(A * A, B * B * Rat(tag_.d));
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
}

bool FieldCtx::is_totally_positive(NfElem const& x) const
{
    if (x.is_zero()) throw domain_error("total positivity of zero");
    if (is_imaginary()) return true;
    if (is_rational()) return x.c0() > 0;
    return real_sign(x, 1) > 0 && real_sign(x, -1) > 0;
}

std::optional<NfElem> FieldCtx::sqrt(NfElem const& x) const
{
    if (x.is_zero()) return x;
    if (is_rational()) {
        if (!arith::is_square(x.c0())) return std::nullopt;
        Int n, d;
        mpz_sqrt(n.get_mpz_t(), x.c0().get_num_mpz_t());
        mpz_sqrt(d.get_mpz_t(), x.c0().get_den_mpz_t());
        return elem(Rat(n, d));
    }
    Rat N = x.norm();
    Rat aN = abs(N);
    if (!arith::is_square(aN)) return std::nullopt;
    Int n, d;
    mpz_sqrt(n.get_mpz_t(), aN.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), aN.get_den_mpz_t());
    Rat r(n, d);
    r.canonicalize();
    // y^2 = x with N(y) = s, Tr(y) = t: t^2 = Tr(x) + 2s and y = (x + s)/t
    for (Rat s : {r, Rat(-r)}) {
        if (s * s != N) continue;
        Rat t2 = x.trace() + 2 * s;
        if (t2 == 0) {
            // y = c*sqrt(d): x = c^2 d
            auto [A, B] = x.sqrt_coords();
            if (B != 0) continue;
            Rat c2 = A / Rat(tag_.d);
            if (!arith::is_square(c2)) continue;
            Int cn, cd;
            mpz_sqrt(cn.get_mpz_t(), c2.get_num_mpz_t());
            mpz_sqrt(cd.get_mpz_t(), c2.get_den_mpz_t());
            NfElem y = sqrt_d() * Rat(cn, cd);
            if (y * y == x) return y;
            continue;
        }
        if (!arith::is_square(t2)) continue;
        Int tn, td;
        mpz_sqrt(tn.get_mpz_t(), t2.get_num_mpz_t());
        mpz_sqrt(td.get_mpz_t(), t2.get_den_mpz_t());
        Rat t(tn, td);
        NfElem y = (x + elem(s)) * (1 / t);
        if (y * y == x) return y;
    }
    return std::nullopt;
}

std::string to_string(NfElem const& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace univint
