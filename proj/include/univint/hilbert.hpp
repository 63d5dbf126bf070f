#ifndef UNIVINT_HILBERT_HPP
#define UNIVINT_HILBERT_HPP

#include <utility>
#include <vector>

#include "univint/place.hpp"

namespace univint {

bool is_local_square(FieldCtx const& K, NfElem const& x, Place const& P);

/* (a, b)_P in {+1, -1}. */
int hilbert_symbol(FieldCtx const& K, NfElem const& a, NfElem const& b, Place const& P);

/* Does z^2 = a x^2 + b y^2 have a primitive solution modulo P^k, k = conic_precision?
 * Equivalent to local solvability at the finite place P. */
bool conic_solvable(FieldCtx const& K, NfElem const& a, NfElem const& b, Place const& P);
int conic_precision(FieldCtx const& K, NfElem const& a, NfElem const& b, Place const& P);

/* Places above 2, in the support of a or b, and the archimedean places. */
PlaceSet candidate_places(FieldCtx const& K, NfElem const& a, NfElem const& b);
PlaceSet delta_set(FieldCtx const& K, NfElem const& a, NfElem const& b);

struct ReciprocityReport {
    int product = 1;
    std::vector<std::pair<Place, int>> symbols;
};
ReciprocityReport reciprocity_audit(FieldCtx const& K, NfElem const& a, NfElem const& b);

/* F_2-basis of K_P^x / K_P^x2 (real: {-1}; complex: empty). */
std::vector<NfElem> const& square_class_basis(FieldCtx const& K, Place const& P);
/* All 2^n subset products of the basis; bit i of the index selects basis[i]. */
std::vector<NfElem> local_class_representatives(FieldCtx const& K, Place const& P);
/* Bits c with x * prod basis[i]^c_i a local square (so x lies in the class of rep c). */
unsigned square_class_index(FieldCtx const& K, NfElem const& x, Place const& P);

}  // namespace univint

#endif
