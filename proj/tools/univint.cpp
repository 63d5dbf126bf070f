// univint: command-line front end to the library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "univint/approx.hpp"
#include "univint/definability.hpp"
#include "univint/errors.hpp"
#include "univint/ideal.hpp"

using namespace univint;
using Json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string format = "text";
    std::uint64_t seed = 1;
    long norm_bound = 10000;
    long max_tries = 200000;
};

class Out {
  public:
    explicit Out(RunConfig const& cfg) : json_(cfg.format == "json") {}

    // one record; in text mode the given line (or key = value pairs) is printed instead
    void emit(Json const& rec, std::string const& text = {})
    {
        if (json_) {
            std::cout << rec.dump() << "\n";
            return;
        }
        if (!text.empty()) {
            std::cout << text << "\n";
            return;
        }
        std::string line;
        for (auto const& [k, v] : rec.items()) {
            if (!line.empty()) line += "  ";
            line += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
        }
        std::cout << line << "\n";
    }

  private:
    bool json_;
};

std::string read_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in) throw domain_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(std::string const& path, std::string const& text)
{
    std::ofstream out(path);
    if (!out) throw domain_error("cannot write " + path);
    out << text;
}

std::string str(NfElem const& x) { return to_string(x); }

std::string join(PlaceSet const& s)
{
    std::string out;
    for (auto const& P : s) out += (out.empty() ? "" : " ") + P.name();
    return out;
}

Json places_json(PlaceSet const& s)
{
    Json a = Json::array();
    for (auto const& P : s) a.push_back(P.name());
    return a;
}

RayContext load_ctx(std::string const& path)
{
    auto ctx = RayContext::parse(read_file(path));
    return ctx;
}

bool looks_like_place(std::string const& s)
{
    return s.find(',') != std::string::npos || s == "inf" || s.rfind("real", 0) == 0 || s == "complex" ||
           (s.size() > 2 && s.front() == '(' && s.back() == ')');
}

bool prime_power(std::int64_t q, int max_f)
{
    if (q < 2) return false;
    auto f = arith::factor(Int(q));
    return f.size() == 1 && f[0].second <= max_f;
}

// ---- commands ----

void cmd_field_info(Out& out, std::string const& spec)
{
    auto K = FieldCtx::parse(spec);
    Json units = Json::array();
    for (auto const& z : K.roots_of_unity()) units.push_back(str(z));
    Json classes = Json::array();
    for (auto const& I : class_group(K)) classes.push_back(I.to_string());
    Json rec;
    rec["field"] = K.spec();
    rec["disc"] = K.disc().get_str();
    rec["basis"] = K.basis_description();
    rec["roots_of_unity"] = units;
    rec["fundamental_unit"] = K.fundamental_unit() ? str(*K.fundamental_unit()) : "";
    rec["minkowski_bound"] = K.minkowski_bound().get_str();
    rec["class_number"] = classes.size();
    rec["class_reps"] = classes;
    out.emit(rec);
}

void cmd_factor(Out& out, std::string const& spec, std::string const& x)
{
    auto K = FieldCtx::parse(spec);
    NfElem e = K.parse_elem(x);
    if (e.is_zero()) throw domain_error("factor: zero has no factorization");
    for (auto const& [P, v] : factor_ideal(K, e)) {
        Json rec;
        rec["place"] = P.name();
        rec["e"] = P.e;
        rec["f"] = P.f;
        rec["norm"] = P.norm().get_str();
        rec["valuation"] = v;
        out.emit(rec);
    }
}

int cmd_hilbert(Out& out, std::string const& spec, std::string const& as, std::string const& bs, std::string const& place,
                bool all)
{
    auto K = FieldCtx::parse(spec);
    NfElem a = K.parse_elem(as), b = K.parse_elem(bs);
    if (!place.empty()) {
        Place P = parse_place(K, place);
        Json rec;
        rec["place"] = P.name();
        rec["symbol"] = hilbert_symbol(K, a, b, P);
        out.emit(rec);
        return 0;
    }
    auto rep = reciprocity_audit(K, a, b);
    for (auto const& [P, s] : rep.symbols) {
        if (!all && s == 1) continue;
        Json rec;
        rec["place"] = P.name();
        rec["symbol"] = s;
        out.emit(rec);
    }
    if (all) {
        Json rec;
        rec["product"] = rep.product;
        out.emit(rec);
        if (rep.product != 1) throw invariant_violation("reciprocity product is -1");
    }
    return 0;
}

void cmd_delta(Out& out, std::string const& spec, std::string const& as, std::string const& bs)
{
    auto K = FieldCtx::parse(spec);
    auto D = delta_set(K, K.parse_elem(as), K.parse_elem(bs));
    Json rec;
    rec["delta"] = places_json(D);
    out.emit(rec, join(D));
}

int cmd_useq(Out& out, long q, long audit_max)
{
    if (audit_max > 0) {
        int bad = 0;
        for (long n = 2; n <= audit_max; ++n) {
            if (!prime_power(n, n <= 11 ? 3 : 2)) continue;
            bool ok = sumset_check(n);
            bad += !ok;
            Json rec;
            rec["q"] = n;
            rec["route"] = n > 11 ? "U+U" : "(U+{2,-2})+U";
            rec["covers"] = ok;
            out.emit(rec);
        }
        if (bad) throw invariant_violation(std::to_string(bad) + " sumset checks failed");
        return 0;
    }
    if (!prime_power(q, 3)) throw domain_error("useq: q must be a prime power p^f with f <= 3");
    auto U = u_set(q);
    Json rec;
    rec["q"] = q;
    rec["U"] = U.to_string();
    out.emit(rec, U.to_string());
    return 0;
}

int cmd_trace(Out& out, bool decompose, std::string const& spec, std::string const& as, std::string const& bs,
              std::string const& ts, long quat_height)
{
    auto K = FieldCtx::parse(spec);
    auto Q = make_quaternion_pair(K, K.parse_elem(as), K.parse_elem(bs));
    NfElem t = K.parse_elem(ts);
    bool member = t_membership(K, t, Q);
    if (!decompose) {
        Json rec;
        rec["t"] = str(t);
        rec["delta"] = places_json(Q.delta);
        rec["member"] = member;
        out.emit(rec);
        return member ? 0 : 1;
    }
    auto c = t_decompose(K, t, Q, quat_height);
    Json rec;
    rec["t"] = str(t);
    rec["member"] = member;
    rec["decomposed"] = c.has_value();
    if (c) {
        rec["r"] = str(c->r);
        rec["t_minus_r"] = str(t - c->r);
        rec["local_only"] = c->local_only();
        auto quat = [](std::optional<std::array<NfElem, 4>> const& q) {
            Json a = Json::array();
            if (q)
                for (auto const& x : *q) a.push_back(str(x));
            return a;
        };
        rec["quat_r"] = quat(c->quat_r);
        rec["quat_rest"] = quat(c->quat_rest);
        bool ok = verify_trace_cert(K, *c, Q);
        rec["verified"] = ok;
        if (!ok) throw invariant_violation("trace certificate failed re-verification");
    }
    out.emit(rec);
    if (member != c.has_value()) throw invariant_violation("membership and decomposition disagree");
    return member ? 0 : 1;
}

void cmd_ctx_select(Out& out, RunConfig const& cfg, std::string const& spec, std::string const& file)
{
    auto ctx = select_ab(FieldCtx::parse(spec), cfg.norm_bound);
    if (!file.empty()) write_file(file, ctx.serialize());
    Json rec;
    rec["field"] = ctx.K.spec();
    rec["a"] = str(ctx.a);
    rec["b"] = str(ctx.b);
    rec["hash"] = context_hash(ctx);
    if (!file.empty()) rec["file"] = file;
    out.emit(rec);
}

int cmd_ctx_verify(Out& out, std::string const& file, std::vector<std::string> const& witnesses)
{
    auto ctx = load_ctx(file);
    Json rec;
    rec["file"] = file;
    rec["field"] = ctx.K.spec();
    rec["a"] = str(ctx.a);
    rec["b"] = str(ctx.b);
    rec["hash"] = context_hash(ctx);
    rec["valid"] = true;
    out.emit(rec);
    int bad = 0;
    for (auto const& wf : witnesses) {
        auto w = Witness::parse(ctx, read_file(wf));
        std::string why;
        bool ok = verify_witness(ctx, w, &why);
        Json r;
        r["witness"] = wf;
        r["t"] = str(w.t);
        r["valid"] = ok;
        if (!ok) r["reason"] = why;
        out.emit(r);
        bad += !ok;
    }
    return bad ? 1 : 0;
}

void cmd_artin(Out& out, std::string const& file, std::string const& arg)
{
    auto ctx = load_ctx(file);
    if (looks_like_place(arg)) {
        Place P = parse_place(ctx.K, arg);
        Json rec;
        rec["place"] = P.name();
        rec["label"] = artin_label(ctx, P).to_string();
        out.emit(rec);
        return;
    }
    NfElem x = ctx.K.parse_elem(arg);
    auto part = prime_partition(ctx, x);
    Json rec;
    rec["elem"] = str(x);
    for (auto const& [l, s] : part.parts) rec[l.to_string()] = places_json(s);
    rec["on_modulus"] = places_json(part.on_modulus);
    if (part.on_modulus.empty()) rec["label"] = artin_label_ideal(ctx, factor_ideal(ctx.K, x)).to_string();
    out.emit(rec);
}

int cmd_prescribe(Out& out, RunConfig const& cfg, std::string const& ctxfile, std::string const& pfile)
{
    auto ctx = load_ctx(ctxfile);
    auto p = Prescription::parse(ctx.K, read_file(pfile));
    auto rep = check_conditions(ctx.K, p);
    for (auto const& v : rep.violations) {
        Json rec;
        rec["condition"] = v.condition;
        if (v.row) rec["row"] = *v.row + 1;
        if (v.place) rec["place"] = v.place->name();
        rec["message"] = v.message;
        out.emit(rec);
    }
    if (!rep.ok()) return 1;
    auto c = solve(ctx.K, p, {cfg.max_tries, cfg.seed});
    Json rec;
    rec["x"] = str(c.x);
    rec["tries"] = c.tries;
    rec["verified"] = verify_solution(ctx.K, p, c.x);
    Json table = Json::array();
    for (auto const& [i, v, s] : c.table) table.push_back(Json::array({i + 1, v.name(), s}));
    rec["table"] = table;
    out.emit(rec);
    return 0;
}

Json verdict_json(RayContext const& ctx, NfElem const& t, Verdict const& v)
{
    Json rec;
    rec["t"] = str(t);
    rec["integral"] = v.integral;
    if (v.witness) {
        auto const& w = *v.witness;
        char const* kinds[] = {"sigma", "pair", "local"};
        rec["bad_prime"] = w.bad_prime.name();
        rec["kind"] = kinds[static_cast<int>(w.ring.kind)];
        rec["delta"] = places_json(w.ring.delta);
        rec["y"] = str(w.y);
        rec["verified"] = verify_witness(ctx, w);
    }
    return rec;
}

void cmd_witness(Out& out, std::string const& ctxfile, std::string const& ts, std::string const& file)
{
    auto ctx = load_ctx(ctxfile);
    NfElem t = ctx.K.parse_elem(ts);
    auto v = decide_integrality(ctx, t);
    auto rec = verdict_json(ctx, t, v);
    if (v.witness && !file.empty()) {
        write_file(file, v.witness->serialize(ctx));
        rec["file"] = file;
    }
    out.emit(rec);
}

int cmd_sweep(Out& out, std::string const& ctxfile, long height, std::string const& dir)
{
    auto ctx = load_ctx(ctxfile);
    int bad = 0, n = 0;
    for (auto const& t : enumerate_by_height(ctx.K, height)) {
        auto v = decide_integrality(ctx, t);
        auto rec = verdict_json(ctx, t, v);
        bool agree = v.integral == (t.denominator() == 1);
        rec["denominator_test"] = agree;
        bad += !agree || (v.witness && !rec["verified"].get<bool>());
        if (v.witness && !dir.empty()) {
            std::string f = dir + "/witness_" + std::to_string(n) + ".txt";
            write_file(f, v.witness->serialize(ctx));
            rec["file"] = f;
        }
        ++n;
        out.emit(rec);
    }
    if (bad) throw invariant_violation(std::to_string(bad) + " verdicts disagree with the denominator test");
    return 0;
}

int cmd_audit_all(Out& out, RunConfig const& cfg, std::string const& ctxfile)
{
    auto ctx = load_ctx(ctxfile);
    auto const& K = ctx.K;
    std::mt19937_64 rng(cfg.seed);
    auto rand_elem = [&](long H) {
        std::uniform_int_distribution<long> num(-H, H), den(1, H);
        for (;;) {
            long c = den(rng);
            NfElem x = K.elem(Rat(num(rng), c), K.is_rational() ? Rat(0) : Rat(num(rng), c));
            if (!x.is_zero()) return x;
        }
    };
    bool failed = false;
    auto report = [&](std::string const& name, long checked, long failures, Json extra = Json::object()) {
        Json rec;
        rec["audit"] = name;
        rec["checked"] = checked;
        rec["failures"] = failures;
        for (auto const& [k, v] : extra.items()) rec[k] = v;
        out.emit(rec);
        failed = failed || failures > 0;
    };

    long fails = 0;
    for (int k = 0; k < 200; ++k)
        if (reciprocity_audit(K, rand_elem(20), rand_elem(20)).product != 1) ++fails;
    report("reciprocity", 200, fails);

    // the (-1,-1) row must match the labels exactly; the mixed rows differ
    // by the primes of a (or b) at which p is a non-residue
    fails = 0;
    long exact = 0, extra = 0, n = 0;
    while (n < 50) {
        NfElem p = rand_elem(30);
        bool off = true;
        for (auto const& [P, e] : factor_ideal(K, p))
            if (ctx.modulus.divides(P)) off = false;
        if (!off) continue;
        ++n;
        auto r = exact_identification_audit(ctx, p);
        if (r.ok) ++exact;
        if (r.rows[0].by_label != r.rows[0].by_symbols) ++fails;
        for (int row : {1, 2}) {
            NfElem ram = row == 1 ? ctx.a : ctx.b;
            PlaceSet expect = r.rows[row].by_label;
            for (auto const& [P, e] : factor_ideal(K, ram))
                if (e % 2 && power_residue_symbol(K, p, P) == -1) expect.push_back(P);
            std::sort(expect.begin(), expect.end());
            if (expect != r.rows[row].by_symbols) ++fails;
            extra += static_cast<long>(r.rows[row].by_symbols.size() - r.rows[row].by_label.size());
        }
    }
    report("identification", n, fails, Json{{"label_sets_exact", exact}, {"extra_primes_of_a_or_b", extra}});

    fails = 0;
    long dual = 0;
    auto Q = make_quaternion_pair(K, ctx.a, ctx.b);
    for (int k = 0; k < 100; ++k) {
        NfElem x = rand_elem(15);
        if (k % 2 == 0) x = x * ctx.a * ctx.b;
        if (in_J(K, x, Q) != in_J_constructive(K, x, Q).has_value()) ++fails;
        for (auto const& c : {ctx.a, ctx.b})
            if (in_I_c(K, x, Q, c) != in_I_c_formula(K, x, Q, c)) ++fails;
        dual += 3;
    }
    report("dual_route", dual, fails);

    fails = 0;
    long sums = 0;
    for (long q = 2; q <= 50; ++q) {
        if (!prime_power(q, q <= 11 ? 3 : 2)) continue;
        ++sums;
        if (!sumset_check(q)) ++fails;
    }
    report("sumset", sums, fails);
    if (failed) throw invariant_violation("audit found failures");
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hilbert symbols, trace sets, ray-class labels and integrality witnesses over Q and quadratic fields"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.set_config("--config", "", "key = value config file")->envname("UNIVINT_CONFIG");
    app.add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", cfg.seed, "seed for randomized searches");
    app.add_option("--norm-bound", cfg.norm_bound, "prime norm bound")->check(CLI::PositiveNumber);
    app.add_option("--max-tries", cfg.max_tries, "prescription search budget")->check(CLI::PositiveNumber);

    std::string spec, a, b, t, place, file, elem, dir, ctxfile, pfile;
    std::vector<std::string> witnesses;
    bool all = false;
    long q = 0, audit_max = 0, height = 0, quat_height = 0;

    auto* field = app.add_subcommand("field", "field data");
    auto* info = field->add_subcommand("info", "discriminant, basis, units, class group");
    info->add_option("spec", spec)->required();
    field->require_subcommand(1);

    auto* factor = app.add_subcommand("factor", "ideal factorization");
    factor->add_option("spec", spec)->required();
    factor->add_option("elem", elem)->required();

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert symbols (a, b)_v");
    hilbert->add_option("spec", spec)->required();
    hilbert->add_option("a", a)->required();
    hilbert->add_option("b", b)->required();
    auto* place_opt = hilbert->add_option("--place", place, "a single place");
    hilbert->add_flag("--all", all, "every candidate place and the product")->excludes(place_opt);

    auto* delta = app.add_subcommand("delta", "ramification set of (a, b)");
    delta->add_option("spec", spec)->required();
    delta->add_option("a", a)->required();
    delta->add_option("b", b)->required();

    auto* useq = app.add_subcommand("useq", "U_q table or sumset audit");
    auto* q_opt = useq->add_option("q", q);
    useq->add_option("--audit", audit_max, "check the sumset lemma for prime powers up to this bound")->excludes(q_opt);

    auto* trace = app.add_subcommand("trace", "trace sets");
    trace->require_subcommand(1);
    auto* tcheck = trace->add_subcommand("check", "t in T_{a,b}");
    auto* tdec = trace->add_subcommand("decompose", "t = r + (t - r) with local certificates");
    for (auto* s : {tcheck, tdec}) {
        s->add_option("spec", spec)->required();
        s->add_option("a", a)->required();
        s->add_option("b", b)->required();
        s->add_option("t", t)->required();
    }
    tdec->add_option("--quat-height", quat_height, "height bound of the quaternion search (0: off)");

    auto* ctxc = app.add_subcommand("ctx", "ray-class contexts");
    ctxc->require_subcommand(1);
    auto* select = ctxc->add_subcommand("select", "choose (a, b) for a field");
    select->add_option("spec", spec)->required();
    select->add_option("--out", file, "write the context file");
    auto* verify = ctxc->add_subcommand("verify", "re-validate a context file and witness files");
    verify->add_option("ctxfile", ctxfile)->required();
    verify->add_option("--witness", witnesses, "witness files to re-check");

    auto* artin = app.add_subcommand("artin", "Artin labels of a prime or of the primes of an element");
    artin->add_option("ctxfile", ctxfile)->required();
    artin->add_option("arg", elem)->required();

    auto* prescribe = app.add_subcommand("prescribe", "check and solve a Hilbert-symbol prescription");
    prescribe->add_option("ctxfile", ctxfile)->required();
    prescribe->add_option("prescription", pfile)->required();

    auto* witness = app.add_subcommand("witness", "integrality verdict with a witness");
    witness->add_option("ctxfile", ctxfile)->required();
    witness->add_option("t", t)->required();
    witness->add_option("--out", file, "write the witness file");

    auto* integ = app.add_subcommand("integrality", "batch integrality decisions");
    integ->require_subcommand(1);
    auto* sweep = integ->add_subcommand("sweep", "all t up to a height");
    sweep->add_option("ctxfile", ctxfile)->required();
    sweep->add_option("--height", height)->required()->check(CLI::PositiveNumber);
    sweep->add_option("--dir", dir, "write witness files here");

    auto* audit = app.add_subcommand("audit", "invariant audits");
    audit->require_subcommand(1);
    auto* audit_all = audit->add_subcommand("all", "reciprocity, identification, dual routes, sumsets");
    audit_all->add_option("ctxfile", ctxfile)->required();

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return 1;
    }

    Out out(cfg);
    try {
        if (info->parsed()) cmd_field_info(out, spec);
        else if (factor->parsed()) cmd_factor(out, spec, elem);
        else if (hilbert->parsed()) return cmd_hilbert(out, spec, a, b, place, all);
        else if (delta->parsed()) cmd_delta(out, spec, a, b);
        else if (useq->parsed()) {
            if (audit_max <= 0 && q <= 0) throw domain_error("useq needs q or --audit");
            return cmd_useq(out, q, audit_max);
        } else if (tcheck->parsed()) return cmd_trace(out, false, spec, a, b, t, 0);
        else if (tdec->parsed()) return cmd_trace(out, true, spec, a, b, t, quat_height);
        else if (select->parsed()) cmd_ctx_select(out, cfg, spec, file);
        else if (verify->parsed()) return cmd_ctx_verify(out, ctxfile, witnesses);
        else if (artin->parsed()) cmd_artin(out, ctxfile, elem);
        else if (prescribe->parsed()) return cmd_prescribe(out, cfg, ctxfile, pfile);
        else if (witness->parsed()) cmd_witness(out, ctxfile, t, file);
        else if (sweep->parsed()) return cmd_sweep(out, ctxfile, height, dir);
        else if (audit_all->parsed()) return cmd_audit_all(out, cfg, ctxfile);
    } catch (domain_error const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (search_exhausted const& e) {
        std::cerr << "undecided by bound: " << e.what() << "\n";
        return 2;
    } catch (invariant_violation const& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
