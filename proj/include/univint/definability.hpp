#ifndef UNIVINT_DEFINABILITY_HPP
#define UNIVINT_DEFINABILITY_HPP

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "univint/class_field.hpp"
#include "univint/prescription.hpp"
#include "univint/trace_sets.hpp"

namespace univint {

/* Odd-valuation support of (c). */
PlaceSet odd_support(FieldCtx const& K, NfElem const& c);

/* x in K^x2 * T^x: even valuation at every finite place of delta. The
 * constructive form returns r with x / r^2 a unit of T (checked through
 * trace-set membership of x/r^2 and r^2/x). */
bool in_square_times_trace_units(FieldCtx const& K, NfElem const& x, QuaternionPair const& Q);
std::optional<NfElem> square_times_trace_unit_root(FieldCtx const& K, NfElem const& x, QuaternionPair const& Q);

/* I^c by the valuation criterion, and by its defining formula
 * c K^2 T^x  cap  (1 - K^2 T^x). y = 0 and y = 1 are outside both. */
bool in_I_c(FieldCtx const& K, NfElem const& y, QuaternionPair const& Q, NfElem const& c);
bool in_I_c_formula(FieldCtx const& K, NfElem const& y, QuaternionPair const& Q, NfElem const& c);

/* y with y and z - y in I^c, built place by place; verified with the formula. */
std::optional<NfElem> split_in_I_c(FieldCtx const& K, NfElem const& z, QuaternionPair const& Q, NfElem const& c);

/* J_{a,b}: x = 0 or v(x) >= 1 on delta cap (P(a) cup P(b)). */
bool in_J(FieldCtx const& K, NfElem const& x, QuaternionPair const& Q);
struct JCert {
    NfElem y1, y2;  // y1, x - y1 in I^a; y2, x - y2 in I^b
};
/* The existential form; nullopt when no split was found (x = 0 gives zeros). */
std::optional<JCert> in_J_constructive(FieldCtx const& K, NfElem const& x, QuaternionPair const& Q);

bool in_Phi(RayContext const& ctx, NfElem const& p, GaloisLabel sigma);
bool in_Phi_tilde(RayContext const& ctx, NfElem const& p, GaloisLabel sigma);
/* prod over P | m (finite and real) of (ap, q)_P. */
int modulus_symbol_product(RayContext const& ctx, NfElem const& p, NfElem const& q);
/* (p, q) in Psi. With sigma != (1,1) the odd primes of p may also carry label
 * sigma (their product still (1,1)); that variant serves the bad primes of mixed label. */
bool in_Psi(RayContext const& ctx, NfElem const& p, NfElem const& q, GaloisLabel sigma = {});

struct WitnessRing {
    enum class Kind { sigma, pair, local };
    Kind kind = Kind::local;
    GaloisLabel sigma;          // kind sigma; for pair the label of the bad prime
    NfElem p, q;                // p for sigma and pair, q for pair
    std::optional<Place> place; // kind local
    PlaceSet delta;
};
/* delta recomputed from the ring parameters by Hilbert symbols. */
PlaceSet ring_delta(RayContext const& ctx, WitnessRing const& R);

/* p0 in delta always; delta = {p0} is reached for sigma = (-1,-1). For the
 * mixed labels the primes of a (or b) cannot be kept out of delta. */
WitnessRing construct_sigma_witness(RayContext const& ctx, Place const& p0);

struct QChoice {
    NfElem q;
    Place prime;
};
/* (A) label (-1,-1), (B) (q/p0) = -1, (C) (q) prime, and (q) not generated by any element of avoid. */
QChoice construct_q(RayContext const& ctx, Place const& p0, std::vector<NfElem> const& avoid = {}, int want_residue = -1);

struct PairWitness {
    WitnessRing ring;
    Prescription table;
    PrescriptionCert cert;
    std::vector<NfElem> E;  // square-class bases at the primes of m0, all = 1 mod p0
    NfElem e0;
    std::optional<Place> ell;  // partner prime of the same label, mixed labels only
};
/* p0 of label (1,1), or a mixed label balanced by a second prime ell of that
 * label in p; delta = {p0} in both cases. */
PairWitness construct_pair_witness(RayContext const& ctx, Place const& p0, SolveConfig const& cfg = {});

struct Witness {
    NfElem t;
    Place bad_prime;
    WitnessRing ring;
    NfElem y;
    std::vector<std::pair<Place, int>> valuations;  // v(y) on delta

    std::string serialize(RayContext const& ctx) const;
    static Witness parse(RayContext const& ctx, std::string const& text);
};

/* Re-derives delta from the ring parameters and checks t y = 1, y in J(R),
 * bad_prime in delta and membership of the parameters in Phi / Psi. */
bool verify_witness(RayContext const& ctx, Witness const& w, std::string* why = nullptr);

struct Verdict {
    bool integral = false;
    std::optional<Witness> witness;
};
/* Throws search_exhausted ("undecided by bound") when a construction runs out. */
Verdict decide_integrality(RayContext const& ctx, NfElem const& t);

/* 64-bit FNV-1a of the canonical context record, in hex. */
std::string context_hash(RayContext const& ctx);

}  // namespace univint

#endif
