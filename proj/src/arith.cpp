#include "univint/arith.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "univint/errors.hpp"

namespace univint::arith {

bool is_prime(Int const& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_prime(std::int64_t n)
{
    return is_prime(Int(static_cast<long>(n)));
}

namespace {

Int pollard_brent(Int const& n)
{
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Int y = 2, x, ys, q = 1, g = 1, t;
        unsigned long r = 1, m = 128;
        auto f = [&](Int const& v) {
            Int w = v * v + c;
            mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
            return w;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    t = abs(x - y);
                    q = q * t;
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                t = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_rec(Int const& n, std::vector<Int>& out)
{
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(Int(n / d), out);
}

}  // namespace

std::vector<std::pair<Int, int>> factor(Int const& n0)
{
    if (n0 == 0) throw domain_error("factor: zero has no factorization");
    Int n = abs(n0);
    std::vector<Int> ps;
    for (unsigned long p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ps.emplace_back(p);
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    factor_rec(n, ps);
    std::sort(ps.begin(), ps.end());
    std::vector<std::pair<Int, int>> res;
    for (auto const& p : ps) {
        if (!res.empty() && res.back().first == p)
            ++res.back().second;
        else
            res.emplace_back(p, 1);
    }
    return res;
}

int valuation(Int const& n, Int const& p)
{
    if (n == 0) throw domain_error("valuation of zero");
    Int m = n;
    int k = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++k;
    }
    return k;
}

int valuation(Rat const& x, Int const& p)
{
    return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

std::int64_t mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mod(Int const& a, std::int64_t m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), Int(static_cast<long>(m)).get_mpz_t());
    return r.get_si();
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m)
{
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

std::int64_t powmod(std::int64_t a, Int const& e, std::int64_t m)
{
    if (e < 0) return powmod(invmod(a, m), Int(-e), m);
    std::int64_t r = 1 % m, b = mod(a, m);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mulmod(r, r, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m);
    }
    return r;
}

std::int64_t invmod(std::int64_t a, std::int64_t m)
{
    std::int64_t old_r = mod(a, m), old_s = 1, r = m, s = 0;
    while (r != 0) {
        std::int64_t qt = old_r / r;
        std::int64_t t = old_r - qt * r;
        old_r = r;
        r = t;
        t = old_s - qt * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw domain_error("invmod: not invertible");
    return mod(old_s, m);
}

int legendre(std::int64_t a, std::int64_t p)
{
    std::int64_t r = mod(a, p);
    if (r == 0) return 0;
    return powmod(r, Int(static_cast<long>((p - 1) / 2)), p) == 1 ? 1 : -1;
}

int kronecker(Int const& D, std::int64_t p)
{
    if (p == 2) {
        if (mpz_even_p(D.get_mpz_t())) return 0;
        long r = mod(D, 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    return legendre(mod(D, p), p);
}

std::int64_t sqrt_mod(std::int64_t a, std::int64_t p)
{
    a = mod(a, p);
    if (a == 0 || p == 2) return a;
    if (legendre(a, p) != 1) throw domain_error("sqrt_mod: not a quadratic residue");
    std::int64_t q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    std::int64_t z = 2;
    while (legendre(z, p) != -1) ++z;
    std::int64_t m = s;
    std::int64_t c = powmod(z, Int(static_cast<long>(q)), p);
    std::int64_t t = powmod(a, Int(static_cast<long>(q)), p);
    std::int64_t r = powmod(a, Int(static_cast<long>((q + 1) / 2)), p);
    while (t != 1) {
        std::int64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        std::int64_t b = c;
        for (std::int64_t j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n)
{
    std::vector<std::int64_t> res;
    if (n < 2) return res;
    std::vector<bool> sieve(static_cast<std::size_t>(n + 1), true);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (!sieve[static_cast<std::size_t>(i)]) continue;
        res.push_back(i);
        for (std::int64_t j = i * i; j <= n; j += i) sieve[static_cast<std::size_t>(j)] = false;
    }
    return res;
}

bool is_squarefree(Int const& n)
{
    if (n == 0) return false;
    for (auto const& [p, k] : factor(n))
        if (k > 1) return false;
    return true;
}

bool is_square(Int const& n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_square(Rat const& x)
{
    return is_square(Int(x.get_num())) && is_square(Int(x.get_den()));
}

std::int64_t to_i64(Int const& n)
{
    if (!n.fits_slong_p() || abs(n) > Int("4611686018427387904"))
        throw domain_error("integer " + n.get_str() + " exceeds the supported prime range");
    return n.get_si();
}

}  // namespace univint::arith
