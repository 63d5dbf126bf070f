#ifndef UNIVINT_PRESCRIPTION_HPP
#define UNIVINT_PRESCRIPTION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "univint/hilbert.hpp"

namespace univint {

/* Targets eps_{i,v} for (a_i, x)_v; entries not listed are +1. */
struct Prescription {
    std::vector<NfElem> family;
    std::map<std::pair<std::size_t, Place>, int> targets;

    int target(std::size_t i, Place const& v) const;
    void set(std::size_t i, Place const& v, int eps);
    /* Places carrying a -1 entry. */
    PlaceSet flagged() const;

    /* Text form: "a_1 := <elem>" rows and "(1, <place>) = -1" entries (1-based). */
    std::string serialize() const;
    static Prescription parse(FieldCtx const& K, std::string const& text);
};

struct Violation {
    int condition = 0;  // 1, 2 or 3
    std::optional<std::size_t> row;
    std::optional<Place> place;
    std::string message;
};

struct ConditionReport {
    std::vector<Violation> violations;
    // one local x_v per flagged place, from its square-class representatives
    std::map<Place, NfElem> local;

    bool ok() const { return violations.empty(); }
    bool violates(int condition) const;
};

ConditionReport check_conditions(FieldCtx const& K, Prescription const& p);

struct SolveConfig {
    long max_tries = 200000;
    std::uint64_t seed = 1;
};

struct PrescriptionCert {
    NfElem x;
    long tries = 0;
    std::vector<std::tuple<std::size_t, Place, int>> table;  // every (row, place) with a nontrivial chance

    std::string to_string() const;
};

/* Finds x with (a_i, x)_v = eps_{i,v} for all i, v. Throws domain_error when
 * the conditions fail and search_exhausted after max_tries candidates. */
PrescriptionCert solve(FieldCtx const& K, Prescription const& p, SolveConfig const& cfg = {});

/* Recomputes every symbol that can differ from +1 and compares with the targets. */
bool verify_solution(FieldCtx const& K, Prescription const& p, NfElem const& x);

}  // namespace univint

#endif
