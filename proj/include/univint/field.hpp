#ifndef UNIVINT_FIELD_HPP
#define UNIVINT_FIELD_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "univint/arith.hpp"

namespace univint {

/* Multiplication data shared by every element of one field.
 * d == 1 encodes Q; otherwise K = Q(sqrt d) with integral basis {1, w},
 * w = sqrt d, or w = (1 + sqrt d)/2 when half is set (d = 1 mod 4). */
struct FieldTag {
    std::int64_t d = 1;
    bool half = false;
    bool operator==(FieldTag const&) const = default;
};

/* Exact element c0 + c1*w of Q or Q(sqrt d). */
class NfElem {
    Rat c0_, c1_;
    FieldTag tag_;

    void check_same(NfElem const& o) const;

  public:
    NfElem() = default;
    NfElem(FieldTag tag, Rat c0, Rat c1 = 0);

    Rat const& c0() const { return c0_; }
    Rat const& c1() const { return c1_; }
    FieldTag tag() const { return tag_; }

    bool is_zero() const { return c0_ == 0 && c1_ == 0; }
    bool is_rational() const { return c1_ == 0; }

    NfElem operator-() const;
    NfElem operator+(NfElem const& o) const;
    NfElem operator-(NfElem const& o) const;
    NfElem operator*(NfElem const& o) const;
    NfElem operator/(NfElem const& o) const;
    NfElem& operator+=(NfElem const& o) { return *this = *this + o; }
    NfElem& operator-=(NfElem const& o) { return *this = *this - o; }
    NfElem& operator*=(NfElem const& o) { return *this = *this * o; }
    NfElem& operator/=(NfElem const& o) { return *this = *this / o; }
    NfElem operator*(Rat const& r) const { return {tag_, c0_ * r, c1_ * r}; }

    bool operator==(NfElem const& o) const { return tag_ == o.tag_ && c0_ == o.c0_ && c1_ == o.c1_; }
    bool operator<(NfElem const& o) const;

    NfElem inverse() const;
    NfElem pow(long k) const;
    NfElem conj() const;
    Rat norm() const;
    Rat trace() const;

    /* x = A + B*sqrt(d) with rational A, B. */
    std::pair<Rat, Rat> sqrt_coords() const;

    /* Least common denominator of the coordinates. */
    Int denominator() const;
    /* Max of |numerators| and the common denominator. */
    Int height() const;
};

std::ostream& operator<<(std::ostream& os, NfElem const& x);
std::string to_string(NfElem const& x);

struct FieldCache;

/* Q or a quadratic field Q(sqrt d), d squarefree, d not in {0, 1}.
 * Copies share the same memo tables (write-once, mutex guarded). */
class FieldCtx {
    FieldTag tag_;
    Int disc_;
    std::optional<NfElem> fundamental_unit_;
    std::vector<NfElem> roots_of_unity_;
    std::shared_ptr<FieldCache> cache_;

    FieldCtx(FieldTag tag, long unit_cap);

  public:
    static constexpr long default_unit_cap = 100000;

    static FieldCtx rational();
    static FieldCtx quadratic(Int const& d, long unit_cap = default_unit_cap);
    /* "Q" or "Q(sqrt,d)". */
    static FieldCtx parse(std::string const& spec);

    bool is_rational() const { return tag_.d == 1; }
    bool is_real() const { return tag_.d > 1; }
    bool is_imaginary() const { return tag_.d < 0; }
    int degree() const { return is_rational() ? 1 : 2; }
    std::int64_t d() const { return tag_.d; }
    bool half_basis() const { return tag_.half; }
    Int const& disc() const { return disc_; }
    FieldTag tag() const { return tag_; }
    std::string spec() const;
    std::string basis_description() const;

    NfElem elem(Rat const& c0, Rat const& c1 = 0) const;
    NfElem zero() const { return elem(0); }
    NfElem one() const { return elem(1); }
    NfElem omega() const;
    /* sqrt(d) in basis coordinates; Q: not available. */
    NfElem sqrt_d() const;

    /* Parse the canonical text form "a/c + b/c*w" (and mild variants). */
    NfElem parse_elem(std::string const& text) const;

    std::vector<NfElem> const& roots_of_unity() const { return roots_of_unity_; }
    std::optional<NfElem> const& fundamental_unit() const { return fundamental_unit_; }
    /* Representatives of O_K^x / (O_K^x)^2. */
    std::vector<NfElem> units_mod_squares() const;

    /* Integer M such that every ideal class has an integral ideal of norm <= M. */
    Int minkowski_bound() const;

    bool is_integral(NfElem const& x) const;
    bool is_totally_positive(NfElem const& x) const;
    /* Sign of x under the real embedding with sqrt d -> s*|sqrt d|, s = +-1. */
    int real_sign(NfElem const& x, int s) const;
    /* Exact square test in K; returns a square root when one exists. */
    std::optional<NfElem> sqrt(NfElem const& x) const;

    FieldCache& cache() const { return *cache_; }
    bool operator==(FieldCtx const& o) const { return tag_ == o.tag_; }
};

}  // namespace univint

#endif
