#ifndef UNIVINT_IDEAL_HPP
#define UNIVINT_IDEAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "univint/place.hpp"

namespace univint {

/* Fractional ideal (1/den) * (Z*a + Z*(b + c*w)) in Hermite normal form,
 * with 0 <= b < a, a, c > 0 and gcd(a, b, c, den) = 1. For Q: (1/den) * Z*a. */
class Ideal {
    FieldTag tag_;
    Int a_ = 1, b_ = 0, c_ = 1, den_ = 1;

    static Ideal from_lattice(FieldTag tag, std::vector<std::pair<Int, Int>> const& gens, Int den);

  public:
    Ideal() = default;

    static Ideal unit(FieldCtx const& K);
    static Ideal principal(FieldCtx const& K, NfElem const& x);
    static Ideal generated(FieldCtx const& K, std::vector<NfElem> const& gens);
    static Ideal prime(FieldCtx const& K, Place const& P);
    static Ideal from_factorization(FieldCtx const& K, Factorization const& f);

    Int const& a() const { return a_; }
    Int const& b() const { return b_; }
    Int const& c() const { return c_; }
    Int const& den() const { return den_; }
    bool rational() const { return tag_.d == 1; }

    Ideal operator*(Ideal const& o) const;
    Ideal conj() const;
    Ideal inverse() const;
    Ideal pow(long k) const;
    Rat norm() const;
    bool contains(NfElem const& x) const;
    bool is_integral() const { return den_ == 1; }
    /* Z-basis of the lattice. */
    std::vector<NfElem> basis(FieldCtx const& K) const;
    Factorization factor(FieldCtx const& K) const;
    int valuation(FieldCtx const& K, Place const& P) const;
    std::string to_string() const;

    bool operator==(Ideal const&) const = default;
};

/* Generator of I when I is principal. Imaginary fields: exact norm-form
 * search; real fields: the search window covers |sigma(alpha)| <= sqrt(N*eps).
 * Throws search_exhausted if the window is beyond max_window. */
std::optional<NfElem> is_principal(FieldCtx const& K, Ideal const& I, long max_window = 50000000);

/* Representatives of the ideal class group (first one is the unit ideal). */
std::vector<Ideal> const& class_group(FieldCtx const& K);
/* Index into class_group(K) of the class of I. */
std::size_t class_index(FieldCtx const& K, Ideal const& I);

}  // namespace univint

#endif
