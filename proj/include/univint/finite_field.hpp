#ifndef UNIVINT_FINITE_FIELD_HPP
#define UNIVINT_FINITE_FIELD_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "univint/arith.hpp"

namespace univint {

/* F_q = F_p[a]/(a^f - sum red[i] a^i), f <= 3. Elements are coefficient
 * vectors in the basis 1, a, a^2. */
class FiniteField {
  public:
    using Elem = std::array<std::int64_t, 3>;

  private:
    std::int64_t p_ = 2;
    int f_ = 1;
    Elem red_{};

  public:
    FiniteField() = default;
    FiniteField(std::int64_t p, int f, Elem reduction);

    /* F_p, or the extension used when printing U_q tables:
     * a^2+a+1 for q = 4, a^3+a+1 for q = 8, a^2+1 for q = 9, and
     * otherwise the first irreducible x^2 - n / x^2 + x + 1. */
    static FiniteField standard(std::int64_t q);

    std::int64_t p() const { return p_; }
    int f() const { return f_; }
    Int q() const;
    /* q as an int64 (throws if it does not fit). */
    std::int64_t size() const;

    Elem zero() const { return {}; }
    Elem one() const { return {1, 0, 0}; }
    Elem from_int(std::int64_t n) const { return {arith::mod(n, p_), 0, 0}; }
    Elem from_int(Int const& n) const { return {arith::mod(n, p_), 0, 0}; }
    Elem gen() const;

    Elem add(Elem const& x, Elem const& y) const;
    Elem sub(Elem const& x, Elem const& y) const;
    Elem neg(Elem const& x) const;
    Elem mul(Elem const& x, Elem const& y) const;
    Elem pow(Elem const& x, Int const& e) const;
    Elem inv(Elem const& x) const;

    bool is_zero(Elem const& x) const { return x[0] == 0 && x[1] == 0 && x[2] == 0; }
    bool is_square(Elem const& x) const;
    /* x^((q-1)/2) as +1/-1 for x != 0, odd q. */
    int quadratic_character(Elem const& x) const;

    std::int64_t index(Elem const& x) const;
    Elem from_index(std::int64_t i) const;
    std::vector<Elem> elements() const;

    /* Paper-style rendering: "5", "a", "2a+1", "a^2+a". */
    std::string to_string(Elem const& x) const;
};

struct ResidueFieldElem {
    FiniteField field;
    FiniteField::Elem value{};

    bool operator==(ResidueFieldElem const& o) const { return value == o.value && field.p() == o.field.p(); }
    std::string to_string() const { return field.to_string(value); }
};

}  // namespace univint

#endif
