#ifndef UNIVINT_ARITH_HPP
#define UNIVINT_ARITH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace univint {

using Int = mpz_class;
using Rat = mpq_class;

/* Rational integer helpers. Everything that touches residue fields works on
 * int64 primes; larger primes are rejected where they would be needed. */
namespace arith {

bool is_prime(Int const& n);
bool is_prime(std::int64_t n);

/* Prime factorization of |n|, n != 0, primes ascending. */
std::vector<std::pair<Int, int>> factor(Int const& n);

/* Largest k with p^k | n; n != 0. */
int valuation(Int const& n, Int const& p);
int valuation(Rat const& x, Int const& p);

std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t mod(Int const& a, std::int64_t m);
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t a, Int const& e, std::int64_t m);
std::int64_t invmod(std::int64_t a, std::int64_t m);

/* Legendre symbol for odd prime p. */
int legendre(std::int64_t a, std::int64_t p);
/* Kronecker symbol (D/p) for a prime p, including p = 2. */
int kronecker(Int const& D, std::int64_t p);

/* A square root of a mod the odd prime p (Tonelli-Shanks); a must be a QR. */
std::int64_t sqrt_mod(std::int64_t a, std::int64_t p);

/* Primes <= n, ascending. */
std::vector<std::int64_t> primes_up_to(std::int64_t n);

bool is_squarefree(Int const& n);
bool is_square(Int const& n);
bool is_square(Rat const& x);

std::int64_t to_i64(Int const& n);

}  // namespace arith
}  // namespace univint

#endif
