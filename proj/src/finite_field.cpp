#include "univint/finite_field.hpp"

#include "univint/errors.hpp"

namespace univint {

FiniteField::FiniteField(std::int64_t p, int f, Elem reduction) : p_(p), f_(f), red_(reduction)
{
    if (f < 1 || f > 3) throw domain_error("finite fields of degree > 3 are not supported");
    for (auto& c : red_) c = arith::mod(c, p_);
}

FiniteField FiniteField::standard(std::int64_t q)
{
    if (q < 2) throw domain_error("q = " + std::to_string(q) + " is not a prime power");
    auto fac = arith::factor(Int(static_cast<long>(q)));
    if (fac.size() != 1) throw domain_error("q = " + std::to_string(q) + " is not a prime power");
    std::int64_t p = fac[0].first.get_si();
    int f = fac[0].second;
    if (f == 1) return FiniteField(p, 1, {});
    if (q == 4) return FiniteField(2, 2, {1, 1, 0});
    if (q == 8) return FiniteField(2, 3, {1, 1, 0});
    if (q == 9) return FiniteField(3, 2, {2, 0, 0});
    if (f == 2) {
        std::int64_t n = 2;
        while (arith::legendre(n, p) != -1) ++n;
        return FiniteField(p, 2, {n, 0, 0});
    }
    throw domain_error("q = " + std::to_string(q) + ": residue degree > 2 is not supported");
}

Int FiniteField::q() const
{
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(f_));
    return r;
}

std::int64_t FiniteField::size() const
{
    Int r = q();
    if (!r.fits_slong_p()) throw domain_error("residue field too large to enumerate");
    return r.get_si();
}

FiniteField::Elem FiniteField::gen() const
{
    if (f_ == 1) throw domain_error("prime field has no generator a");
    return {0, 1, 0};
}

FiniteField::Elem FiniteField::add(Elem const& x, Elem const& y) const
{
    Elem r{};
    for (int i = 0; i < f_; ++i) r[i] = arith::mod(x[i] + y[i], p_);
    return r;
}

FiniteField::Elem FiniteField::sub(Elem const& x, Elem const& y) const
{
    Elem r{};
    for (int i = 0; i < f_; ++i) r[i] = arith::mod(x[i] - y[i], p_);
    return r;
}

FiniteField::Elem FiniteField::neg(Elem const& x) const { return sub(zero(), x); }

FiniteField::Elem FiniteField::mul(Elem const& x, Elem const& y) const
{
    std::array<std::int64_t, 5> c{};
    for (int i = 0; i < f_; ++i)
        for (int j = 0; j < f_; ++j) c[i + j] = arith::mod(c[i + j] + arith::mulmod(x[i], y[j], p_), p_);
    for (int k = 2 * f_ - 2; k >= f_; --k) {
        std::int64_t ck = c[k];
        c[k] = 0;
        for (int i = 0; i < f_; ++i) c[k - f_ + i] = arith::mod(c[k - f_ + i] + arith::mulmod(ck, red_[i], p_), p_);
    }
    return {c[0], c[1], c[2]};
}

FiniteField::Elem FiniteField::pow(Elem const& x, Int const& e) const
{
    if (e < 0) return pow(inv(x), Int(-e));
    Elem r = one();
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, x);
    }
    return r;
}

FiniteField::Elem FiniteField::inv(Elem const& x) const
{
    if (is_zero(x)) throw domain_error("inverse of zero in a finite field");
    return pow(x, Int(q() - 2));
}

bool FiniteField::is_square(Elem const& x) const
{
    if (p_ == 2 || is_zero(x)) return true;
    return quadratic_character(x) == 1;
}

int FiniteField::quadratic_character(Elem const& x) const
{
    if (is_zero(x)) return 0;
    if (p_ == 2) return 1;
    Elem r = pow(x, Int((q() - 1) / 2));
    if (r == one()) return 1;
    if (r == neg(one())) return -1;
    throw invariant_violation("Euler criterion produced neither +1 nor -1");
}

std::int64_t FiniteField::index(Elem const& x) const
{
    std::int64_t r = 0;
    for (int i = f_ - 1; i >= 0; --i) r = r * p_ + x[i];
    return r;
}

FiniteField::Elem FiniteField::from_index(std::int64_t i) const
{
    Elem r{};
    for (int k = 0; k < f_; ++k) {
        r[k] = i % p_;
        i /= p_;
    }
    return r;
}

std::vector<FiniteField::Elem> FiniteField::elements() const
{
    std::int64_t n = size();
    std::vector<Elem> r;
    r.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) r.push_back(from_index(i));
    return r;
}

std::string FiniteField::to_string(Elem const& x) const
{
    std::string out;
    for (int i = f_ - 1; i >= 0; --i) {
        if (x[i] == 0) continue;
        std::string term;
        if (i == 0 || x[i] != 1) term = std::to_string(x[i]);
        if (i >= 1) term += "a";
        if (i >= 2) term += "^" + std::to_string(i);
        if (!out.empty()) out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace univint
