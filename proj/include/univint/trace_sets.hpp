#ifndef UNIVINT_TRACE_SETS_HPP
#define UNIVINT_TRACE_SETS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "univint/hilbert.hpp"

namespace univint {

/* s in F_q with x^2 - s x + 1 irreducible. */
struct USet {
    FiniteField field;
    std::vector<FiniteField::Elem> members;  // ascending by index

    bool contains(FiniteField::Elem const& s) const;
    std::string to_string() const;  // space separated
};

USet u_set(FiniteField const& F);
USet u_set(std::int64_t q);

/* A + B == F. */
bool sumset_covers(FiniteField const& F, std::vector<FiniteField::Elem> const& A,
                   std::vector<FiniteField::Elem> const& B);
/* U + U == F_q, and for q <= 11 also (U + {2, -2}) + U == F_q. */
bool sumset_check(std::int64_t q);

/* A quaternion pair (a, b) with its ramification set. */
struct QuaternionPair {
    NfElem a, b;
    PlaceSet delta;
};
QuaternionPair make_quaternion_pair(FieldCtx const& K, NfElem const& a, NfElem const& b);

/* t in S_{a,b}(K_P): traces of norm-one quaternions over the completion. */
bool local_trace_membership(FieldCtx const& K, NfElem const& t, QuaternionPair const& Q, Place const& P);

/* t in T = S + S, i.e. t integral at every finite place of delta. Throws
 * domain_error when some real place has a and b both negative. */
bool t_membership(FieldCtx const& K, NfElem const& t, QuaternionPair const& Q);

struct TraceCert {
    NfElem t, r;
    // x1^2 - a x2^2 - b x3^2 + ab x4^2 = 1 with 2 x1 = r and 2 x1 = t - r; empty when
    // the bounded search found none (the halves are then certified locally only)
    std::optional<std::array<NfElem, 4>> quat_r, quat_rest;
    bool local_only() const { return !quat_r || !quat_rest; }
};

/* Builds r with r and t - r in S_{a,b}(K_P) for every P in delta; nullopt when
 * no local decomposition exists at some place. quat_height bounds the
 * quaternion search (0 disables it). */
std::optional<TraceCert> t_decompose(FieldCtx const& K, NfElem const& t, QuaternionPair const& Q,
                                     long quat_height = 0);
/* Re-checks the local conditions and any quaternion witnesses. */
bool verify_trace_cert(FieldCtx const& K, TraceCert const& c, QuaternionPair const& Q);

/* Bounded search for a norm-one quaternion of reduced trace s. */
std::optional<std::array<NfElem, 4>> norm_one_with_trace(FieldCtx const& K, NfElem const& s, QuaternionPair const& Q,
                                                         long height);

enum class SigmaBox { real_line, interval4, complex_plane };
SigmaBox sigma_box(FieldCtx const& K, QuaternionPair const& Q, Place const& sigma);
std::string to_string(SigmaBox b);

}  // namespace univint

#endif
