#include "bbring/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "bbring/bruteforce.hpp"
#include "bbring/errors.hpp"
#include "bbring/ringops.hpp"

namespace bbring::cli {

using blackbox::ElementCode;
using blackbox::RingOracle;
using blackbox::RingSpec;
using idealcore::IdealSpec;
using idealcore::Side;
using json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kCommands = {
    "basis", "order",  "ring-order", "equal", "member", "witness", "intersect",     "colon",        "annihilate",
    "unit",  "inverse", "one",       "zero",  "neg",    "solve",   "prime",         "hom-kernel",   "hom-injective",
    "hom-surjective", "bench-queries"};

struct RunConfig {
    std::string command;
    std::string ring_file;
    std::string ideal;
    std::string ideal2;
    std::string side;
    std::string backend = "exact";
    std::uint64_t seed = 0;
    double epsilon = 1e-6;
    bool verify = false;
    bool count_queries = false;
    bool json_output = false;
    bool debug_codes = false;
    bool period_finding = false;
    std::string element;
    std::string rhs;
    std::string codomain_file;
    std::string map;
    std::string family = "modular";
    unsigned kmin = 4;
    unsigned kmax = 14;
};

class Divergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RingSpec load_ring(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open ring description '" + path + "'");
    return blackbox::parse_ring_description(in);
}

qsim::Backend parse_backend(const std::string& name) {
    if (name == "exact") return qsim::Backend::exact;
    if (name == "sampled") return qsim::Backend::sampled;
    throw ParseError("unknown backend '" + name + "'");
}

std::vector<ElementCode> parse_elements(const RingOracle& ring, const std::string& text) {
    std::vector<ElementCode> out;
    for (const std::string& lit : split_element_list(text)) out.push_back(ring.parse_element(lit));
    return out;
}

std::string hex(ElementCode c) {
    std::ostringstream os;
    os << "0x" << std::hex << c.bits;
    return os.str();
}

void print_human(std::ostream& out, const json& j, const std::string& prefix = "") {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            print_human(out, *it, key);
        } else if (it->is_string()) {
            out << key << ": " << it->get<std::string>() << "\n";
        } else {
            out << key << ": " << it->dump() << "\n";
        }
    }
}

double fit_exponent(const std::vector<BenchRow>& rows) {
    if (rows.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const BenchRow& r : rows) {
        const double x = std::log(static_cast<double>(r.k));
        const double y = std::log(static_cast<double>(r.add_count + r.mul_count));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(rows.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

class Session {
public:
    Session(const RunConfig& cfg, json& doc) : cfg_(cfg), doc_(doc) {}

    int execute();

private:
    void open_ring();
    std::string lit(ElementCode c) const {
        std::string s = ring_->format_element(c);
        if (cfg_.debug_codes) s += " [" + hex(c) + "]";
        return s;
    }
    json lits(const std::vector<ElementCode>& v) const {
        json a = json::array();
        for (ElementCode c : v) a.push_back(lit(c));
        return a;
    }
    IdealSpec ideal(const std::string& text, const char* flag) const;
    Side side_or(Side fallback) const;
    ElementCode element(const std::string& text, const char* flag) const;
    ringops::HomomorphismOracle homomorphism();
    bruteforce::Enumerated& brute();
    void check(bool ok, const std::string& what) const {
        if (!ok) throw Divergence(what);
    }
    bruteforce::ElementSet closure(const IdealSpec& i) { return brute().ideal_closure(i.side, i.generators); }
    bruteforce::ElementSet span(const std::vector<ElementCode>& v) { return brute().additive_closure(v); }

    json run_command();

    const RunConfig& cfg_;
    json& doc_;
    std::shared_ptr<RingOracle> ring_;
    std::unique_ptr<qsim::Provider> provider_;
    std::unique_ptr<abelian::Workspace> ws_;
    std::unique_ptr<ringops::RingContext> ctx_;
    std::unique_ptr<bruteforce::Enumerated> brute_;
    std::shared_ptr<RingOracle> codomain_;
    std::function<void()> verify_;
};

void Session::open_ring() {
    const RingSpec spec = load_ring(cfg_.ring_file);
    ring_ = blackbox::make_ring(spec, cfg_.seed);
    qsim::ProviderConfig pc;
    pc.backend = parse_backend(cfg_.backend);
    pc.epsilon = cfg_.epsilon;
    pc.seed = cfg_.seed ^ 0xa0761d6478bd642full;
    provider_ = std::make_unique<qsim::Provider>(pc);
    ws_ = std::make_unique<abelian::Workspace>(ring_, *provider_);
    ctx_ = std::make_unique<ringops::RingContext>(*ws_);
    doc_["ring"] = spec.to_string();
    if (cfg_.verify && blackbox::GroundTruth(*ring_).order() > blackbox::kDeskCap)
        throw PreconditionError("--verify needs a ring of order at most 2^20");
}

IdealSpec Session::ideal(const std::string& text, const char* flag) const {
    if (text.empty()) throw ParseError(std::string("missing ") + flag);
    return IdealSpec{side_or(Side::two_sided), parse_elements(*ring_, text)};
}

Side Session::side_or(Side fallback) const {
    if (cfg_.side.empty()) return fallback;
    auto s = idealcore::parse_side(cfg_.side);
    if (!s) throw ParseError("unknown side '" + cfg_.side + "'");
    return *s;
}

ElementCode Session::element(const std::string& text, const char* flag) const {
    if (text.empty()) throw ParseError(std::string("missing ") + flag);
    return ring_->parse_element(text);
}

bruteforce::Enumerated& Session::brute() {
    if (!brute_) brute_ = std::make_unique<bruteforce::Enumerated>(*ring_);
    return *brute_;
}

ringops::HomomorphismOracle Session::homomorphism() {
    if (cfg_.codomain_file.empty()) throw ParseError("missing --codomain");
    codomain_ = blackbox::make_ring(load_ring(cfg_.codomain_file), cfg_.seed + 1);
    doc_["inputs"]["codomain"] = codomain_->spec().to_string();
    doc_["inputs"]["map"] = cfg_.map;
    return ringops::make_additive_map(ring_, codomain_, parse_elements(*codomain_, cfg_.map));
}

json Session::run_command() {
    const std::string& cmd = cfg_.command;
    json& in = doc_["inputs"];
    json r = json::object();
    auto& ctx = *ctx_;

    auto record_ideal = [&](const char* key, const IdealSpec& i) {
        in[key] = lits(i.generators);
        in["side"] = idealcore::to_string(i.side);
    };

    if (cmd == "basis") {
        const IdealSpec i = ideal(cfg_.ideal, "--ideal");
        record_ideal("ideal", i);
        const auto rep = ctx.ideal_basis(i);
        r["orders"] = rep.basis.s;
        r["order"] = rep.order();
        r["generators"] = lits(rep.basis.h);
        r["tensor"] = rep.tensor;
        json prov = json::array();
        for (const auto& p : rep.provenance) prov.push_back(p.to_string());
        r["provenance"] = prov;
        r["multipliers"] = lits(rep.multipliers);
        r["augmentations"] = rep.accumulation.trace.augmentations;
        verify_ = [this, i, rep] {
            const auto c = closure(i);
            check(c.size() == rep.order(), "ideal order " + std::to_string(rep.order()) + " vs brute force " + std::to_string(c.size()));
            check(span(rep.basis.h) == c, "basis does not span the brute-force ideal");
            for (std::size_t a = 0; a < rep.basis.rank(); ++a)
                for (std::size_t b = 0; b < rep.basis.rank(); ++b) {
                    ElementCode acc = brute().zero();
                    for (std::size_t k = 0; k < rep.basis.rank(); ++k)
                        acc = brute().add(acc, brute().scale(rep.tensor[a][b][k], rep.basis.h[k]));
                    check(acc == brute().mul(rep.basis.h[a], rep.basis.h[b]), "tensor entry mismatch");
                }
        };
    } else if (cmd == "order") {
        const IdealSpec i = ideal(cfg_.ideal, "--ideal");
        record_ideal("ideal", i);
        const auto n = ringops::ideal_order(ctx, i);
        r["order"] = n;
        verify_ = [this, i, n] { check(closure(i).size() == n, "ideal order mismatch"); };
    } else if (cmd == "ring-order") {
        const auto n = ringops::ring_order(ctx);
        r["order"] = n;
        verify_ = [this, n] { check(brute().order() == n, "ring order mismatch"); };
    } else if (cmd == "equal") {
        const IdealSpec i = ideal(cfg_.ideal, "--ideal"), j = ideal(cfg_.ideal2, "--ideal2");
        record_ideal("ideal", i);
        record_ideal("ideal2", j);
        const bool eq = ringops::ideal_equal(ctx, i, j);
        r["equal"] = eq;
        verify_ = [this, i, j, eq] { check((closure(i) == closure(j)) == eq, "equality verdict mismatch"); };
    } else if (cmd == "member") {
        const IdealSpec i = ideal(cfg_.ideal, "--ideal");
        const ElementCode x = element(cfg_.element, "--element");
        record_ideal("ideal", i);
        in["element"] = lit(x);
        const bool m = ringops::ideal_contains(ctx, i, x);
        r["member"] = m;
        verify_ = [this, i, x, m] { check(closure(i).count(x) == (m ? 1u : 0u), "membership verdict mismatch"); };
    } else if (cmd == "witness") {
        const IdealSpec i = ideal(cfg_.ideal, "--ideal");
        const ElementCode x = element(cfg_.element, "--element");
        record_ideal("ideal", i);
        in["element"] = lit(x);
        const auto rep = ctx.ideal_basis(i);
        const auto w = idealcore::membership_witness(*ws_, x, rep);
        r["expression"] = w.to_string();
        r["multipliers"] = lits(rep.multipliers);
        verify_ = [this, i, x, w, rep] {
            check(closure(i).count(x) == 1, "witness for a non-member");
            check(w.evaluate(*ws_, i.generators, rep.multipliers) == x, "witness does not evaluate to the element");
        };
    } else if (cmd == "intersect") {
        const IdealSpec i = ideal(cfg_.ideal, "--ideal"), j = ideal(cfg_.ideal2, "--ideal2");
        record_ideal("ideal", i);
        record_ideal("ideal2", j);
        const auto rep = ringops::ideal_intersection(ctx, i, j);
        r["orders"] = rep.basis.s;
        r["order"] = rep.order();
        r["generators"] = lits(rep.basis.h);
        verify_ = [this, i, j, rep] {
            check(span(rep.basis.h) == bruteforce::intersection(closure(i), closure(j)), "intersection mismatch");
        };
    } else if (cmd == "colon") {
        const IdealSpec i = ideal(cfg_.ideal, "--ideal"), j = ideal(cfg_.ideal2, "--ideal2");
        record_ideal("ideal", i);
        record_ideal("ideal2", j);
        const auto res = ringops::colon_ideal(ctx, i, j);
        r["order"] = res.order;
        r["generators"] = lits(res.generators);
        verify_ = [this, i, j, res] { check(span(res.generators) == brute().colon(closure(i), closure(j)), "colon ideal mismatch"); };
    } else if (cmd == "annihilate") {
        if (cfg_.ideal.empty()) throw ParseError("missing --ideal");
        const auto s = parse_elements(*ring_, cfg_.ideal);
        const Side side = side_or(Side::left);
        in["set"] = lits(s);
        in["side"] = idealcore::to_string(side);
        const auto res = ringops::annihilator(ctx, s, side);
        r["order"] = res.order;
        r["generators"] = lits(res.generators);
        verify_ = [this, s, side, res] { check(span(res.generators) == brute().annihilator(s, side), "annihilator mismatch"); };
    } else if (cmd == "unit") {
        const ElementCode x = element(cfg_.element, "--element");
        in["element"] = lit(x);
        const bool u = ringops::is_unit(ctx, x);
        r["unit"] = u;
        verify_ = [this, x, u] { check(brute().is_unit(x) == u, "unit verdict mismatch"); };
    } else if (cmd == "inverse") {
        const ElementCode x = element(cfg_.element, "--element");
        in["element"] = lit(x);
        const ElementCode y = ringops::inverse(ctx, x);
        r["inverse"] = lit(y);
        verify_ = [this, x, y] { check(brute().inverse(x) == y, "inverse mismatch"); };
    } else if (cmd == "one") {
        const ElementCode e = ringops::multiplicative_identity(ctx);
        r["one"] = lit(e);
        verify_ = [this, e] { check(brute().one() == e, "identity mismatch"); };
    } else if (cmd == "zero") {
        const ElementCode z = ringops::additive_identity(ctx);
        r["zero"] = lit(z);
        verify_ = [this, z] { check(brute().zero() == z, "zero mismatch"); };
    } else if (cmd == "neg") {
        const ElementCode x = element(cfg_.element, "--element");
        in["element"] = lit(x);
        const ElementCode y = ringops::additive_inverse(ctx, x);
        r["neg"] = lit(y);
        verify_ = [this, x, y] { check(brute().add(x, y) == brute().zero(), "additive inverse mismatch"); };
    } else if (cmd == "solve") {
        const ElementCode a = element(cfg_.element, "--element"), b = element(cfg_.rhs, "--rhs");
        in["a"] = lit(a);
        in["b"] = lit(b);
        const auto x = ringops::solve_linear(ctx, a, b);
        r["solution"] = x ? json(lit(*x)) : json("no solution");
        verify_ = [this, a, b, x] {
            const auto sols = brute().solutions(a, b);
            check(x ? sols.count(*x) == 1 : sols.empty(), "solve verdict mismatch");
        };
    } else if (cmd == "prime") {
        const IdealSpec i = ideal(cfg_.ideal, "--ideal");
        record_ideal("ideal", i);
        ringops::PrimeTestOptions opt;
        opt.period_finding = cfg_.period_finding;
        const auto v = ringops::is_prime_ideal(ctx, i, opt);
        r["verdict"] = v.prime ? "prime" : "not-prime";
        r["quotient_order"] = v.quotient_order;
        r["trials"] = v.trials;
        r["confidence"] = v.confidence;
        if (v.witness) r["witness"] = lit(*v.witness);
        verify_ = [this, i, v] { check(brute().quotient_is_field(closure(i)) == v.prime, "prime verdict mismatch"); };
    } else if (cmd == "hom-kernel" || cmd == "hom-injective" || cmd == "hom-surjective") {
        const auto rho = homomorphism();
        const ElementCode cz = blackbox::GroundTruth(*codomain_).zero();
        if (cmd == "hom-kernel") {
            const auto k = ringops::hom_kernel(ctx, rho);
            r["order"] = k.order;
            r["generators"] = lits(k.generators);
            verify_ = [this, rho, k, cz] { check(span(k.generators) == brute().kernel(rho.eval, cz), "kernel mismatch"); };
        } else if (cmd == "hom-injective") {
            const bool inj = ringops::is_injective(ctx, rho);
            r["injective"] = inj;
            verify_ = [this, rho, inj, cz] { check((brute().kernel(rho.eval, cz).size() == 1) == inj, "injectivity mismatch"); };
        } else {
            const bool sur = ringops::is_surjective(ctx, rho);
            r["surjective"] = sur;
            verify_ = [this, rho, sur] {
                bruteforce::ElementSet image;
                for (ElementCode x : brute().elements()) image.insert(rho.eval(x));
                check((image.size() == blackbox::GroundTruth(*codomain_).order()) == sur, "surjectivity mismatch");
            };
        }
    } else {
        throw ParseError("unknown command '" + cmd + "'");
    }
    return r;
}

int Session::execute() {
    doc_["schema"] = "bbring.run/1";
    doc_["command"] = cfg_.command;
    doc_["ring"] = nullptr;
    doc_["inputs"] = json::object();
    doc_["result"] = nullptr;
    doc_["queries"] = nullptr;
    doc_["confidence"] = nullptr;
    doc_["seed"] = cfg_.seed;

    if (cfg_.command == "bench-queries") {
        const BenchReport rep = bench_queries(cfg_.family, cfg_.kmin, cfg_.kmax, cfg_.seed, cfg_.backend, cfg_.epsilon);
        doc_["inputs"] = {{"family", cfg_.family}, {"kmin", cfg_.kmin}, {"kmax", cfg_.kmax}};
        json rows = json::array();
        for (const BenchRow& row : rep.rows)
            rows.push_back({{"k", row.k}, {"add", row.add_count}, {"mul", row.mul_count},
                            {"total", row.add_count + row.mul_count}, {"brute_force", row.brute_force}});
        doc_["result"] = {{"rows", rows}, {"exponent", std::round(rep.exponent * 1e4) / 1e4}};
        doc_["confidence"] = {{"backend", cfg_.backend}, {"epsilon", cfg_.epsilon}};
        return kOk;
    }

    if (cfg_.ring_file.empty()) throw ParseError("missing --ring");
    open_ring();
    doc_["result"] = run_command();
    const auto q = ring_->ledger().snapshot();
    doc_["queries"] = {{"add", q.add_count}, {"mul", q.mul_count}, {"total", q.total()}};
    const bool low = provider_->low_confidence() && provider_->backend() == qsim::Backend::sampled;
    doc_["confidence"] = {{"backend", cfg_.backend},
                          {"epsilon", cfg_.epsilon},
                          {"decisions", provider_->stats().decisions},
                          {"low_confidence", low}};
    if (cfg_.verify && verify_) {
        verify_();
        doc_["verified"] = true;
    }
    return low ? kLowConfidence : kOk;
}

}  // namespace

std::vector<std::string> split_element_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    auto flush = [&] {
        std::string_view t = blackbox::trim(cur);
        if (!t.empty()) out.emplace_back(t);
        cur.clear();
    };
    for (char c : text) {
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (depth == 0 && (c == '|' || std::isspace(static_cast<unsigned char>(c)))) {
            flush();
            continue;
        }
        cur += c;
    }
    flush();
    return out;
}

BenchReport bench_queries(const std::string& family, unsigned kmin, unsigned kmax, std::uint64_t seed,
                          const std::string& backend, double epsilon) {
    if (family != "modular" && family != "matrix") throw ParseError("unknown family '" + family + "'");
    if (kmin < 1 || kmax < kmin) throw ParseError("bad k range");
    BenchReport rep;
    for (unsigned k = kmin; k <= kmax; ++k) {
        const RingSpec base = RingSpec::modular(std::uint64_t{1} << k);
        const RingSpec spec = family == "modular" ? base : RingSpec::matrix(2, base);
        if (!blackbox::ring_order(spec)) throw PreconditionError("ring too large for k = " + std::to_string(k));
        auto ring = blackbox::make_ring(spec, seed + k);
        qsim::ProviderConfig pc;
        pc.backend = parse_backend(backend);
        pc.epsilon = epsilon;
        pc.seed = seed ^ (0x9e3779b97f4a7c15ull * k);
        qsim::Provider provider(pc);
        abelian::Workspace ws(ring, provider);
        idealcore::find_basis_representation(ws, idealcore::whole_ring(*ring));
        BenchRow row;
        row.k = k;
        row.add_count = ring->ledger().add_count();
        row.mul_count = ring->ledger().mul_count();
        if (*blackbox::ring_order(spec) <= blackbox::kDeskCap) {
            const std::uint64_t before = ring->verification_queries();
            blackbox::brute_force_enumerate(*ring);
            row.brute_force = ring->verification_queries() - before;
        }
        rep.rows.push_back(row);
    }
    rep.exponent = fit_exponent(rep.rows);
    return rep;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Ideal computations in black-box finite rings", "bbring"};
    app.add_option("command", cfg.command, "Command to run")->required()->check(CLI::IsMember(kCommands));
    app.add_option("--ring", cfg.ring_file, "Ring description file");
    app.add_option("--ideal", cfg.ideal, "Ideal generators (element literals separated by spaces or |)");
    app.add_option("--ideal2", cfg.ideal2, "Second ideal");
    app.add_option("--side", cfg.side, "left|right|two");
    app.add_option("--backend", cfg.backend, "exact|sampled")->check(CLI::IsMember({"exact", "sampled"}));
    auto* seed_opt = app.add_option("--seed", cfg.seed, "Random seed (overrides BBRING_SEED)");
    app.add_option("--epsilon", cfg.epsilon, "Failure budget per decision")->check(CLI::Range(1e-300, 0.999999));
    app.add_flag("--verify", cfg.verify, "Cross-check against brute-force enumeration");
    app.add_flag("--count-queries", cfg.count_queries, "Report oracle query counts");
    app.add_flag("--json", cfg.json_output, "Structured output");
    app.add_flag("--debug-codes", cfg.debug_codes, "Show raw element codes next to literals");
    app.add_flag("--period-finding", cfg.period_finding, "Prime test through period finding");
    app.add_option("--element", cfg.element, "Element literal");
    app.add_option("--rhs", cfg.rhs, "Right-hand side for solve");
    app.add_option("--codomain", cfg.codomain_file, "Codomain ring description for hom-*");
    app.add_option("--map", cfg.map, "Images of the domain's additive coordinate generators");
    app.add_option("--family", cfg.family, "bench-queries family: modular|matrix");
    app.add_option("--kmin", cfg.kmin, "bench-queries smallest k");
    app.add_option("--kmax", cfg.kmax, "bench-queries largest k");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    }
    if (seed_opt->count() == 0) {
        if (const char* env = std::getenv("BBRING_SEED")) {
            try {
                cfg.seed = std::stoull(env);
            } catch (const std::exception&) {
                err << "error: BBRING_SEED is not an integer\n";
                return kParseError;
            }
        }
    }

    json doc = json::object();
    Session session(cfg, doc);
    int code = kOk;
    try {
        code = session.execute();
    } catch (const Divergence& e) {
        err << "verify: divergence from brute force: " << e.what() << "\n";
        code = kVerifyDivergence;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    } catch (const ProviderFailure& e) {
        err << "error: " << e.what() << "\n";
        return kLowConfidence;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kPreconditionError;
    }
    if (code == kVerifyDivergence) return code;
    if (!cfg.count_queries && !cfg.json_output) doc.erase("queries");
    if (cfg.json_output) {
        out << doc.dump(2) << "\n";
    } else {
        json shown = doc;
        shown.erase("schema");
        print_human(out, shown);
    }
    if (code == kLowConfidence) err << "warning: low-confidence result\n";
    return code;
}

}  // namespace bbring::cli
