#include "univint/prescription.hpp"

#include <algorithm>
#include <random>
#include <regex>
#include <sstream>

#include "univint/approx.hpp"
#include "univint/errors.hpp"
#include "univint/ideal.hpp"

namespace univint {

int Prescription::target(std::size_t i, Place const& v) const
{
    auto it = targets.find({i, v});
    return it == targets.end() ? 1 : it->second;
}

void Prescription::set(std::size_t i, Place const& v, int eps)
{
    if (i >= family.size()) throw domain_error("prescription row " + std::to_string(i + 1) + " does not exist");
    if (eps != 1 && eps != -1) throw domain_error("prescription entries are +1 or -1");
    if (eps == 1)
        targets.erase({i, v});
    else
        targets[{i, v}] = -1;
}

PlaceSet Prescription::flagged() const
{
    PlaceSet out;
    for (auto const& [k, e] : targets)
        if (e == -1) out.push_back(k.second);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string Prescription::serialize() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < family.size(); ++i) os << "a_" << i + 1 << " := " << family[i] << "\n";
    for (auto const& [k, e] : targets)
        if (e == -1) os << "(" << k.first + 1 << ", " << k.second.name() << ") = -1\n";
    return os.str();
}

Prescription Prescription::parse(FieldCtx const& K, std::string const& text)
{
    static std::regex const row(R"(^\s*a_(\d+)\s*:=\s*(.+?)\s*$)");
    static std::regex const entry(R"(^\s*\(\s*(\d+)\s*,\s*(.+)\)\s*=\s*([+-]?1)\s*$)");
    Prescription p;
    std::vector<std::tuple<std::size_t, std::string, int>> entries;
    std::istringstream is(text);
    std::string line;
    std::smatch m;
    while (std::getline(is, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (line.find("field") == first) continue;
        if (std::regex_match(line, m, row)) {
            std::size_t i = std::stoul(m[1]);
            if (i != p.family.size() + 1) throw domain_error("prescription rows must be numbered 1, 2, ...");
            NfElem a = K.parse_elem(m[2]);
            if (a.is_zero()) throw domain_error("prescription row a_" + std::to_string(i) + " is zero");
            p.family.push_back(a);
        } else if (std::regex_match(line, m, entry)) {
            entries.emplace_back(std::stoul(m[1]), m[2], std::stoi(m[3]));
        } else {
            throw domain_error("cannot parse prescription line: " + line);
        }
    }
    if (p.family.empty()) throw domain_error("prescription has no rows");
    for (auto const& [i, place, eps] : entries) {
        if (i < 1) throw domain_error("prescription rows are 1-based");
        p.set(i - 1, parse_place(K, place), eps);
    }
    return p;
}

bool ConditionReport::violates(int condition) const
{
    return std::any_of(violations.begin(), violations.end(), [&](Violation const& v) { return v.condition == condition; });
}

namespace {

void check_family(Prescription const& p)
{
    if (p.family.empty()) throw domain_error("prescription has no rows");
    for (auto const& a : p.family)
        if (a.is_zero()) throw domain_error("prescription row is zero");
}

std::optional<NfElem> local_solution(FieldCtx const& K, Prescription const& p, Place const& v)
{
    for (auto const& x : local_class_representatives(K, v)) {
        bool good = true;
        for (std::size_t i = 0; i < p.family.size() && good; ++i)
            if (hilbert_symbol(K, p.family[i], x, v) != p.target(i, v)) good = false;
        if (good) return x;
    }
    return std::nullopt;
}

// v_P(x - t) >= this pins x to the square class of t
int class_precision(FieldCtx const& K, NfElem const& t, Place const& P)
{
    return valuation(K, t, P) + (P.is_dyadic() ? 2 * P.e + 1 : 1);
}

PlaceSet relevant_places(FieldCtx const& K, Prescription const& p, NfElem const& x)
{
    PlaceSet out = p.flagged();
    for (auto const& a : p.family) {
        auto c = candidate_places(K, a, x);
        out.insert(out.end(), c.begin(), c.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Cheap screen before a full factorization: the part of N(x) off S and off
// the small primes must be 1, a prime in range, or small enough to split fast
bool worth_factoring(NfElem const& x, PlaceSet const& S)
{
    static std::vector<std::int64_t> const small = arith::primes_up_to(2000);
    static Int const range("4611686018427387904"), fast("1000000000000000000");
    Int n = abs(Int(x.norm().get_num()));
    auto strip = [&](std::int64_t p) {
        Int pp = p;
        while (n % pp == 0) n /= pp;
    };
    for (auto const& P : S)
        if (P.is_finite()) strip(P.p);
    for (auto p : small) strip(p);
    if (n <= fast) return true;
    Int root = sqrt(n);
    if (root * root == n) n = root;  // an inert prime
    return n <= range && arith::is_prime(n);
}

// positive definite A^2 + |d| B^2 on x = A + B sqrt d
Rat size2(FieldCtx const& K, NfElem const& x)
{
    auto [A, B] = x.sqrt_coords();
    return A * A + (K.is_rational() ? Rat(0) : Rat(abs(Int(K.d())))) * B * B;
}

Int round_rat(Rat const& r)
{
    Rat h = r + Rat(1, 2);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return q;
}

// Gauss reduction of a rank-2 lattice basis (rank 1 for Q)
std::vector<NfElem> reduced_basis(FieldCtx const& K, std::vector<NfElem> g)
{
    if (g.size() < 2) return g;
    auto dot = [&](NfElem const& x, NfElem const& y) -> Rat { return (size2(K, x + y) - size2(K, x) - size2(K, y)) / 2; };
    for (;;) {
        if (size2(K, g[0]) > size2(K, g[1])) std::swap(g[0], g[1]);
        Int m = round_rat(dot(g[0], g[1]) / size2(K, g[0]));
        if (m == 0) return g;
        g[1] = g[1] - g[0] * Rat(m);
    }
}

// x minus the nearest lattice point (Babai rounding in coordinates)
NfElem reduce_mod(FieldCtx const& K, NfElem const& x, std::vector<NfElem> const& g)
{
    if (g.size() == 1) return x - g[0] * Rat(round_rat(x.c0() / g[0].c0()));
    Rat det = g[0].c0() * g[1].c1() - g[0].c1() * g[1].c0();
    Rat u = (x.c0() * g[1].c1() - x.c1() * g[1].c0()) / det;
    Rat v = (g[0].c0() * x.c1() - g[0].c1() * x.c0()) / det;
    (void)K;
    return x - g[0] * Rat(round_rat(u)) - g[1] * Rat(round_rat(v));
}

}  // namespace

ConditionReport check_conditions(FieldCtx const& K, Prescription const& p)
{
    check_family(p);
    ConditionReport rep;
    // (1) holds by construction: only finitely many entries can be stored
    for (std::size_t i = 0; i < p.family.size(); ++i) {
        int prod = 1;
        for (auto const& [k, e] : p.targets)
            if (k.first == i) prod *= e;
        if (prod != 1)
            rep.violations.push_back({2, i, std::nullopt,
                                      "(2) row a_" + std::to_string(i + 1) + " has an odd number of -1 entries"});
    }
    for (auto const& v : p.flagged()) {
        auto x = local_solution(K, p, v);
        if (x)
            rep.local[v] = *x;
        else
            rep.violations.push_back({3, std::nullopt, v, "(3) no local x at " + v.name() + " matches the column"});
    }
    return rep;
}

bool verify_solution(FieldCtx const& K, Prescription const& p, NfElem const& x)
{
    if (x.is_zero()) return false;
    for (auto const& v : relevant_places(K, p, x))
        for (std::size_t i = 0; i < p.family.size(); ++i)
            if (hilbert_symbol(K, p.family[i], x, v) != p.target(i, v)) return false;
    return true;
}

PrescriptionCert solve(FieldCtx const& K, Prescription const& p, SolveConfig const& cfg)
{
    auto rep = check_conditions(K, p);
    if (!rep.ok()) throw domain_error("prescription is not admissible: " + rep.violations.front().message);

    // S: flagged places, places above 2, supports of the a_i, real places
    PlaceSet S = p.flagged();
    for (auto const& P : places_above(K, 2)) S.push_back(P);
    for (auto const& a : p.family)
        for (auto const& [P, e] : factor_ideal(K, a)) S.push_back(P);
    for (auto const& P : infinite_places(K))
        if (P.is_real()) S.push_back(P);
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());

    ApproxProblem prob;
    Factorization lattice;
    for (auto const& v : S) {
        NfElem t = rep.local.count(v) ? rep.local.at(v) : K.one();
        if (v.is_real()) {
            prob.sign(v, K.real_sign(t, K.is_rational() ? 1 : v.sign));
            continue;
        }
        int n = class_precision(K, t, v);
        prob.cong(v, t, n);
        lattice.emplace_back(v, n);
    }
    // x ranges over x0 + L, L = prod P^n, with a reduced basis of L
    auto g = reduced_basis(K, Ideal::from_factorization(K, lattice).basis(K));
    NfElem x0 = reduce_mod(K, weak_approx(K, prob), g);

    // every x0 + L keeps the local classes on S; accept once the odd-valuation
    // primes off S all have trivial symbols, which happens for instance when
    // (x) has a single prime off S (product formula)
    std::mt19937_64 rng(cfg.seed);
    for (long tries = 0; tries < cfg.max_tries; ++tries) {
        long h = 1 + tries / 64;
        std::uniform_int_distribution<long> coord(-h, h);
        NfElem x = x0;
        if (tries > 0)
            for (auto const& b : g) x += b * Rat(coord(rng));
        if (x.is_zero()) continue;
        bool good = true;
        for (auto const& [P, s] : prob.signs)
            if (K.real_sign(x, K.is_rational() ? 1 : P.sign) != s) good = false;
        // the screen is dropped for the last three quarters of the budget
        if (!good || (tries < cfg.max_tries / 4 && !worth_factoring(x, S))) continue;
        Factorization fx;
        try {
            fx = factor_ideal(K, x);
        } catch (domain_error const&) {
            continue;  // a prime factor beyond the residue-field range
        }
        for (auto const& [P, e] : fx) {
            if (e % 2 == 0 || std::binary_search(S.begin(), S.end(), P)) continue;
            for (auto const& a : p.family)
                if (hilbert_symbol(K, a, x, P) != 1) good = false;
            if (!good) break;
        }
        if (!good) continue;
        if (!verify_solution(K, p, x)) throw invariant_violation("prescription candidate failed re-verification");
        PrescriptionCert c;
        c.x = x;
        c.tries = tries + 1;
        for (auto const& v : relevant_places(K, p, x))
            for (std::size_t i = 0; i < p.family.size(); ++i) c.table.emplace_back(i, v, hilbert_symbol(K, p.family[i], x, v));
        return c;
    }
    throw search_exhausted("prescription solve: no x after " + std::to_string(cfg.max_tries) + " candidates");
}

std::string PrescriptionCert::to_string() const
{
    std::ostringstream os;
    os << "x = " << x << "\n";
    os << "tries = " << tries << "\n";
    for (auto const& [i, v, s] : table) os << "(" << i + 1 << ", " << v.name() << ") = " << s << "\n";
    return os.str();
}

}  // namespace univint
