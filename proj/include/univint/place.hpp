#ifndef UNIVINT_PLACE_HPP
#define UNIVINT_PLACE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "univint/field.hpp"
#include "univint/finite_field.hpp"

namespace univint {

/* A place of K. Finite places are stored by the rational prime p below and,
 * when f = 1, the root r with w = r mod the prime; the prime is then
 * (p, w - r). Inert primes and primes of Q are (p). */
struct Place {
    enum class Kind { finite, real, complex };

    Kind kind = Kind::finite;
    std::int64_t p = 0;
    int e = 1, f = 1;
    std::int64_t r = 0;
    // real places: sqrt d -> sign * |sqrt d|
    int sign = 1;
    bool rational = false;
    // beta: integral, w-free at this prime; n*beta/p is integral whenever n is in the prime
    NfElem beta;

    bool is_finite() const { return kind == Kind::finite; }
    bool is_real() const { return kind == Kind::real; }
    bool is_complex() const { return kind == Kind::complex; }
    bool is_dyadic() const { return kind == Kind::finite && p == 2; }
    bool split_like() const { return e == 1 && f == 1; }
    Int norm() const;

    std::string name() const;

    bool operator==(Place const& o) const
    {
        return kind == o.kind && p == o.p && r == o.r && sign == o.sign && f == o.f;
    }
    bool operator!=(Place const& o) const { return !(*this == o); }
    bool operator<(Place const& o) const;
};

using PlaceSet = std::vector<Place>;  // sorted, unique
using Factorization = std::vector<std::pair<Place, int>>;  // sorted by place

/* Places above the rational prime p (p < 2^62). */
std::vector<Place> const& places_above(FieldCtx const& K, std::int64_t p);
std::vector<Place> places_above(FieldCtx const& K, Int const& p);
/* Real places (two for real quadratic, one for Q) or the single complex place. */
std::vector<Place> infinite_places(FieldCtx const& K);
/* The other place above the same p for split primes; otherwise P itself. */
Place conjugate_place(FieldCtx const& K, Place const& P);

/* Parse "(p, w - r)", "(p)", "p", "real+", "real-", "inf", "complex". */
Place parse_place(FieldCtx const& K, std::string const& text);

int valuation(FieldCtx const& K, NfElem const& x, Place const& P);
Factorization factor_ideal(FieldCtx const& K, NfElem const& x);
/* Rational primes dividing the norm numerator or denominator of x. */
std::vector<Int> norm_primes(FieldCtx const& K, NfElem const& x);

/* Uniformizer at P: integral, v_P = 1, a unit at the other places above p. */
NfElem uniformizer(FieldCtx const& K, Place const& P);

FiniteField residue_field(FieldCtx const& K, Place const& P);
ResidueFieldElem reduce(FieldCtx const& K, NfElem const& x, Place const& P);
/* Global integral element reducing to the given residue (small coordinates). */
NfElem lift_residue(FieldCtx const& K, Place const& P, FiniteField::Elem const& v);

/* O_P / P^n realized on coordinates mod p^k.
 * e = f = 1: integers mod p^n (image of w is a Hensel root rho).
 * otherwise: pairs (c0, c1) mod p^k with k = ceil(n/e), i.e. O / p^k O
 * which refines O/P^n. */
class LocalRing {
    FieldCtx const* K_ = nullptr;
    Place P_;
    int n_ = 1;
    int k_ = 1;
    Int pk_;
    Int rho_;

  public:
    struct Elem {
        Int c0, c1;
        bool operator==(Elem const&) const = default;
    };

    LocalRing(FieldCtx const& K, Place const& P, int n);

    Place const& place() const { return P_; }
    Int const& modulus() const { return pk_; }
    int exponent() const { return k_; }
    /* Effective precision: congruence mod p^k here means mod P^precision(). */
    int precision() const { return P_.split_like() ? n_ : k_ * P_.e; }
    bool pairs() const { return !P_.split_like(); }
    Int const& rho() const { return rho_; }

    /* Image of a P-integral element. */
    Elem image(NfElem const& x) const;
    Elem mul(Elem const& x, Elem const& y) const;
    Elem add(Elem const& x, Elem const& y) const;
    Elem sub(Elem const& x, Elem const& y) const;
    bool is_zero(Elem const& x) const { return x.c0 == 0 && x.c1 == 0; }
    bool is_unit(Elem const& x) const;
    /* Integral representative with coordinates in [0, p^k). */
    NfElem lift(Elem const& x) const;
};

/* x = num / (u * d) with num, u integral, u a P-unit, d an integer prime to p. */
struct PIntegralParts {
    NfElem num, unit;
    Int den;
};
PIntegralParts p_integral_parts(FieldCtx const& K, NfElem const& x, Place const& P);

/* Hensel lift of the root r of the minimal polynomial of w mod p^k (split p). */
Int hensel_root(FieldCtx const& K, std::int64_t p, std::int64_t r, int k);

}  // namespace univint

#endif
