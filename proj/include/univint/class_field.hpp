#ifndef UNIVINT_CLASS_FIELD_HPP
#define UNIVINT_CLASS_FIELD_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "univint/hilbert.hpp"
#include "univint/ideal.hpp"

namespace univint {

/* m = m0 * (real places). */
struct Modulus {
    Ideal m0;
    Factorization m0_factors;
    std::vector<Place> real_places;

    static Modulus make(FieldCtx const& K, NfElem const& m0_generator, bool all_real);
    bool divides(Place const& P) const;  // P | m0
    int exponent(Place const& P) const;  // v_P(m0)
};

/* x = 1 mod* m: v(x - 1) >= v(m0) on the support of m0, x > 0 at the listed real places. */
bool in_K_m1(FieldCtx const& K, NfElem const& x, Modulus const& m);

/* (x/P) for an odd P with v_P(x) = 0. */
int power_residue_symbol(FieldCtx const& K, NfElem const& x, Place const& P);

/* Frobenius in Gal(K(sqrt a, sqrt b)/K) = {+-1}^2. */
struct GaloisLabel {
    int i = 1, j = 1;

    GaloisLabel operator*(GaloisLabel const& o) const { return {i * o.i, j * o.j}; }
    bool operator==(GaloisLabel const&) const = default;
    bool operator<(GaloisLabel const& o) const { return i != o.i ? i < o.i : j < o.j; }
    bool trivial() const { return i == 1 && j == 1; }
    std::string to_string() const;
    static GaloisLabel parse(std::string const& s);
    static std::vector<GaloisLabel> all();  // (1,1), (1,-1), (-1,1), (-1,-1)
};

struct RayContext {
    FieldCtx K;
    NfElem a, b;
    Modulus modulus;
    long norm_bound = 10000;

    /* Canonical text record; parse() re-validates the pair. */
    std::string serialize() const;
    static RayContext parse(std::string const& text);
};

/* The modulus (8ab) * (all real places) for the pair, after checking the
 * pair conditions (1), (2), (4), (5); throws domain_error naming the first
 * one that fails. */
RayContext make_context(FieldCtx const& K, NfElem const& a, NfElem const& b, long norm_bound = 10000);

struct PairCheck {
    bool independent = false;    // (1) none of a, b, ab is a square
    bool one_mod_8 = false;      // (2)
    bool chebotarev = false;     // (3) every (class, label) cell hit within the bound
    bool coprime = false;        // (4)
    bool totally_positive = false;  // (5)
    std::string failure;         // first violated condition, empty when all hold

    bool ok() const { return failure.empty(); }
};
/* Condition (3) is checked only when the others hold and check3 is set. */
PairCheck check_pair(FieldCtx const& K, NfElem const& a, NfElem const& b, long norm_bound, bool check3 = true);

/* First pair in a fixed candidate order that passes all five checks. */
RayContext select_ab(FieldCtx const& K, long norm_bound = 10000);

GaloisLabel artin_label(RayContext const& ctx, Place const& P);
GaloisLabel artin_label_ideal(RayContext const& ctx, Factorization const& f);

struct PrimePartition {
    std::map<GaloisLabel, PlaceSet> parts;  // odd-valuation primes off m0, by label
    PlaceSet on_modulus;                    // odd-valuation primes dividing m0
    PlaceSet odd_support() const;
};
PrimePartition prime_partition(RayContext const& ctx, NfElem const& p);

/* Finite places of norm <= bound in (norm, place) order. */
std::vector<Place> primes_by_norm(FieldCtx const& K, long bound);

/* A prime off m0 in class class_group(K)[cls] with the given label, not in
 * exclude. Throws search_exhausted naming (class, label, bound). */
Place find_prime(RayContext const& ctx, std::size_t cls, GaloisLabel sigma, PlaceSet const& exclude = {},
                 long norm_bound = 0);

/* (x) ~ (y) in the ray class group mod m: x*u/y in K_{m,1} for a unit u. */
bool same_ray_class(RayContext const& ctx, NfElem const& x, NfElem const& y);

struct IdentificationReport {
    struct Row {
        GaloisLabel sigma;
        PlaceSet by_label, by_symbols;
    };
    std::vector<Row> rows;  // (-1,-1), (-1,1), (1,-1)
    bool ok = true;
};
IdentificationReport exact_identification_audit(RayContext const& ctx, NfElem const& p);

}  // namespace univint

#endif
