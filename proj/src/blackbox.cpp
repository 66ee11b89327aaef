#include "bbring/blackbox.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <unordered_set>

#include "bbring/errors.hpp"
#include "bbring/numtheory.hpp"
#include "concrete_ring.hpp"

namespace bbring::blackbox {

using u64 = std::uint64_t;

// ---------------------------------------------------------------------------
// Text helpers

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (depth < 0) throw ParseError("unbalanced brackets in '" + std::string(text) + "'");
        if (c == sep && depth == 0) {
            out.emplace_back(trim(text.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (depth != 0) throw ParseError("unbalanced brackets in '" + std::string(text) + "'");
    std::string_view last = trim(text.substr(start));
    if (!last.empty() || !out.empty()) out.emplace_back(last);
    return out;
}

namespace {

u64 parse_u64(std::string_view text, const std::string& field) {
    text = trim(text);
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError(field + ": expected a non-negative integer, got '" + std::string(text) + "'");
    return v;
}

std::vector<u64> parse_u64_list(std::string_view text, const std::string& field) {
    std::string_view t = trim(text);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') throw ParseError(field + ": unterminated list");
        t = t.substr(1, t.size() - 2);
    }
    std::vector<u64> out;
    for (const std::string& item : split_top_level(t, ',')) out.push_back(parse_u64(item, field));
    return out;
}

bool consume_word(std::string_view& s, std::string_view word) {
    s = trim(s);
    if (s.substr(0, word.size()) != word) return false;
    std::string_view rest = s.substr(word.size());
    if (!rest.empty() && (std::isalnum(static_cast<unsigned char>(rest.front())) || rest.front() == '_')) return false;
    s = trim(rest);
    return true;
}

std::string_view take_token(std::string_view& s) {
    s = trim(s);
    std::size_t i = 0;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '[' && s[i] != '(') ++i;
    std::string_view tok = s.substr(0, i);
    s = trim(s.substr(i));
    return tok;
}

}  // namespace

// ---------------------------------------------------------------------------
// RingSpec

RingSpec RingSpec::modular(u64 n) {
    RingSpec s;
    s.kind = Kind::modular;
    s.n = n;
    return s;
}

RingSpec RingSpec::product(std::vector<RingSpec> factors) {
    RingSpec s;
    s.kind = Kind::product;
    s.factors = std::move(factors);
    return s;
}

RingSpec RingSpec::matrix(std::size_t k, RingSpec base) {
    RingSpec s;
    s.kind = Kind::matrix;
    s.k = k;
    s.factors.push_back(std::move(base));
    return s;
}

RingSpec RingSpec::polyquot(u64 p, std::vector<u64> f) {
    RingSpec s;
    s.kind = Kind::polyquot;
    s.p = p;
    s.f = std::move(f);
    return s;
}

std::string RingSpec::to_string() const {
    switch (kind) {
        case Kind::modular:
            return "modular " + std::to_string(n);
        case Kind::product: {
            std::string out = "product(";
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (i) out += ", ";
                out += factors[i].to_string();
            }
            return out + ")";
        }
        case Kind::matrix:
            return "matrix " + std::to_string(k) + " over " + base().to_string();
        case Kind::polyquot: {
            std::string out = "polyquot " + std::to_string(p) + " [";
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(f[i]);
            }
            return out + "]";
        }
    }
    return {};
}

void validate(const RingSpec& spec) {
    switch (spec.kind) {
        case RingSpec::Kind::modular:
            if (spec.n < 2) throw SpecError("ring.n: modulus must be at least 2, got " + std::to_string(spec.n));
            break;
        case RingSpec::Kind::product:
            if (spec.factors.empty()) throw SpecError("ring.factors: a product needs at least one factor");
            for (const RingSpec& f : spec.factors) validate(f);
            break;
        case RingSpec::Kind::matrix:
            if (spec.k < 1) throw SpecError("ring.k: matrix size must be at least 1");
            if (spec.factors.size() != 1) throw SpecError("ring.base: a matrix ring needs exactly one base ring");
            validate(spec.base());
            break;
        case RingSpec::Kind::polyquot:
            if (!nt::is_prime(spec.p)) throw SpecError("ring.p: characteristic must be prime, got " + std::to_string(spec.p));
            if (spec.f.size() < 2) throw SpecError("ring.f: modulus polynomial must have degree at least 1");
            if (spec.f.back() % spec.p != 1) throw SpecError("ring.f: modulus polynomial must be monic");
            break;
    }
    if (!ring_order(spec)) throw SpecError("ring: order exceeds 2^62");
}

std::optional<u64> ring_order(const RingSpec& spec) {
    auto capped = [](std::optional<u64> v) -> std::optional<u64> {
        if (!v || *v > kMaxRingOrder) return std::nullopt;
        return v;
    };
    switch (spec.kind) {
        case RingSpec::Kind::modular:
            return capped(spec.n);
        case RingSpec::Kind::product: {
            std::optional<u64> total = 1;
            for (const RingSpec& f : spec.factors) {
                std::optional<u64> o = ring_order(f);
                if (!o) return std::nullopt;
                total = capped(nt::checked_mul(*total, *o));
                if (!total) return std::nullopt;
            }
            return total;
        }
        case RingSpec::Kind::matrix: {
            if (spec.factors.size() != 1) return std::nullopt;
            std::optional<u64> base = ring_order(spec.base());
            if (!base) return std::nullopt;
            std::optional<u64> total = 1;
            for (std::size_t i = 0; i < spec.k * spec.k; ++i) {
                total = capped(nt::checked_mul(*total, *base));
                if (!total) return std::nullopt;
            }
            return total;
        }
        case RingSpec::Kind::polyquot: {
            if (spec.f.size() < 2) return std::nullopt;
            std::optional<u64> total = 1;
            for (std::size_t i = 0; i + 1 < spec.f.size(); ++i) {
                total = capped(nt::checked_mul(*total, spec.p));
                if (!total) return std::nullopt;
            }
            return total;
        }
    }
    return std::nullopt;
}

RingSpec parse_ring_spec(std::string_view text) {
    std::string_view s = trim(text);
    if (consume_word(s, "modular")) return RingSpec::modular(parse_u64(s, "ring.n"));
    if (consume_word(s, "product")) {
        if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("product spec must be 'product(<spec>, ...)'");
        std::vector<RingSpec> factors;
        for (const std::string& item : split_top_level(s.substr(1, s.size() - 2), ',')) factors.push_back(parse_ring_spec(item));
        return RingSpec::product(std::move(factors));
    }
    if (consume_word(s, "matrix")) {
        const u64 k = parse_u64(take_token(s), "ring.k");
        if (!consume_word(s, "over")) throw ParseError("matrix spec must be 'matrix <k> over <spec>'");
        return RingSpec::matrix(static_cast<std::size_t>(k), parse_ring_spec(s));
    }
    if (consume_word(s, "polyquot")) {
        const u64 p = parse_u64(take_token(s), "ring.p");
        return RingSpec::polyquot(p, parse_u64_list(s, "ring.f"));
    }
    throw ParseError("unknown ring spec '" + std::string(text) + "'");
}

RingSpec parse_ring_description(std::istream& in) {
    std::map<std::string, std::string> fields;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string_view t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key(trim(t.substr(0, eq)));
        std::string value(trim(t.substr(eq + 1)));
        static const std::array<std::string_view, 8> known{"ring", "ring.kind", "ring.n", "ring.factors",
                                                           "ring.k", "ring.base", "ring.p", "ring.f"};
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        fields[key] = value;
    }
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = fields.find(key);
        if (it == fields.end()) throw ParseError("missing field " + key);
        return it->second;
    };
    if (fields.count("ring")) return parse_ring_spec(fields["ring"]);
    const std::string& kind = need("ring.kind");
    if (kind == "modular") return RingSpec::modular(parse_u64(need("ring.n"), "ring.n"));
    if (kind == "product") {
        std::vector<RingSpec> factors;
        for (const std::string& item : split_top_level(need("ring.factors"), ',')) factors.push_back(parse_ring_spec(item));
        return RingSpec::product(std::move(factors));
    }
    if (kind == "matrix")
        return RingSpec::matrix(static_cast<std::size_t>(parse_u64(need("ring.k"), "ring.k")), parse_ring_spec(need("ring.base")));
    if (kind == "polyquot") return RingSpec::polyquot(parse_u64(need("ring.p"), "ring.p"), parse_u64_list(need("ring.f"), "ring.f"));
    throw ParseError("ring.kind: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Encoding

namespace {

u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

u64 inverse_mod_2_64(u64 odd) {
    u64 inv = odd;
    for (int i = 0; i < 6; ++i) inv *= 2 - odd * inv;
    return inv;
}

}  // namespace

/// Keyed bijection on width-bit strings: rounds of odd multiplication, xorshift
/// and keyed addition, each invertible modulo 2^width.
class Scrambler {
public:
    Scrambler(unsigned width, u64 seed)
        : width_(width), mask_(width >= 64 ? ~u64{0} : (u64{1} << width) - 1), shift_(std::max(1u, width / 2)) {
        u64 state = seed ^ 0x5851f42d4c957f2dull;
        for (std::size_t r = 0; r < kRounds; ++r) {
            mul_[r] = splitmix64(state) | 1;
            inv_[r] = inverse_mod_2_64(mul_[r]);
            add_[r] = splitmix64(state) & mask_;
        }
    }

    u64 mask() const noexcept { return mask_; }

    u64 encode(u64 x) const {
        for (std::size_t r = 0; r < kRounds; ++r) {
            x = (x * mul_[r]) & mask_;
            x ^= x >> shift_;
            x = (x + add_[r]) & mask_;
        }
        return x;
    }

    u64 decode(u64 x) const {
        for (std::size_t r = kRounds; r-- > 0;) {
            x = (x - add_[r]) & mask_;
            const u64 y = x;
            for (unsigned covered = shift_; covered < width_ + shift_; covered += shift_) x = y ^ (x >> shift_);
            x = (x * inv_[r]) & mask_;
        }
        return x;
    }

private:
    static constexpr std::size_t kRounds = 4;
    unsigned width_;
    u64 mask_;
    unsigned shift_;
    std::array<u64, kRounds> mul_{}, inv_{}, add_{};
};

// ---------------------------------------------------------------------------
// RingOracle

RingOracle::RingOracle(RingSpec spec, u64 seed) : spec_(std::move(spec)), seed_(seed) {
    ring_ = build_concrete_ring(spec_);
    // Smallest b with 2^b >= |R|, padded by two bits of non-element codes.
    width_ = static_cast<unsigned>(std::bit_width(ring_->order() - 1)) + 2;
    scrambler_ = std::make_unique<Scrambler>(width_, seed);
    for (u64 g : ring_->generators()) generators_.push_back(encode(g));
}

RingOracle::~RingOracle() = default;

u64 RingOracle::decode(ElementCode code) const {
    if ((code.bits & ~scrambler_->mask()) != 0) throw InvalidCodeError("code wider than the ring's encoding width");
    const u64 index = scrambler_->decode(code.bits);
    if (index >= ring_->order()) throw InvalidCodeError("code does not name a ring element");
    return index;
}

ElementCode RingOracle::encode(u64 index) const { return ElementCode{scrambler_->encode(index)}; }

ElementCode RingOracle::add(ElementCode a, ElementCode b) const {
    ledger_.record_add();
    return encode(ring_->add(decode(a), decode(b)));
}

ElementCode RingOracle::mul(ElementCode a, ElementCode b) const {
    ledger_.record_mul();
    return encode(ring_->mul(decode(a), decode(b)));
}

ElementCode RingOracle::verify_add(ElementCode a, ElementCode b) const {
    verify_.fetch_add(1, std::memory_order_relaxed);
    return encode(ring_->add(decode(a), decode(b)));
}

ElementCode RingOracle::verify_mul(ElementCode a, ElementCode b) const {
    verify_.fetch_add(1, std::memory_order_relaxed);
    return encode(ring_->mul(decode(a), decode(b)));
}

ElementCode RingOracle::parse_element(std::string_view literal) const { return encode(ring_->parse(literal)); }

std::string RingOracle::format_element(ElementCode code) const { return ring_->format(decode(code), false); }

std::shared_ptr<RingOracle> make_ring(const RingSpec& spec, u64 seed) {
    validate(spec);
    return std::shared_ptr<RingOracle>(new RingOracle(spec, seed));
}

// ---------------------------------------------------------------------------
// GroundTruth

u64 GroundTruth::order() const { return ring_->ring_->order(); }

const std::vector<u64>& GroundTruth::additive_moduli() const { return ring_->ring_->moduli(); }

std::vector<u64> GroundTruth::coordinates(ElementCode code) const { return ring_->ring_->digits(ring_->decode(code)); }

ElementCode GroundTruth::from_coordinates(std::span<const u64> coords) const {
    return ring_->encode(ring_->ring_->from_digits(coords));
}

ElementCode GroundTruth::element(u64 index) const {
    if (index >= order()) throw InvalidCodeError("element index out of range");
    return ring_->encode(index);
}

u64 GroundTruth::index(ElementCode code) const { return ring_->decode(code); }

ElementCode GroundTruth::add(ElementCode a, ElementCode b) const {
    return ring_->encode(ring_->ring_->add(ring_->decode(a), ring_->decode(b)));
}

ElementCode GroundTruth::mul(ElementCode a, ElementCode b) const {
    return ring_->encode(ring_->ring_->mul(ring_->decode(a), ring_->decode(b)));
}

ElementCode GroundTruth::zero() const { return ring_->encode(0); }

ElementCode GroundTruth::one() const { return ring_->encode(ring_->ring_->one()); }

// ---------------------------------------------------------------------------

std::vector<ElementCode> brute_force_enumerate(const RingOracle& ring, u64 cap) {
    const u64 order = GroundTruth(ring).order();
    if (order > cap)
        throw CapExceededError("brute-force enumeration refused: |R| = " + std::to_string(order) + " exceeds cap " + std::to_string(cap));

    std::unordered_set<ElementCode, ElementCodeHash> seen;
    std::vector<ElementCode> elems;
    std::vector<std::size_t> adds_done;
    std::vector<bool> muls_done;
    std::vector<ElementCode> additive = ring.generators();
    const std::vector<ElementCode>& gens = ring.generators();

    auto insert = [&](ElementCode c) {
        if (!seen.insert(c).second) return false;
        elems.push_back(c);
        adds_done.push_back(0);
        muls_done.push_back(false);
        return true;
    };
    for (ElementCode g : gens) insert(g);

    // Close under +additive and under left/right multiplication by generators; every
    // product outside the current set becomes a new additive generator.
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            while (adds_done[i] < additive.size()) {
                insert(ring.verify_add(elems[i], additive[adds_done[i]]));
                ++adds_done[i];
            }
            if (!muls_done[i]) {
                muls_done[i] = true;
                for (ElementCode g : gens) {
                    for (ElementCode p : {ring.verify_mul(elems[i], g), ring.verify_mul(g, elems[i])}) {
                        if (insert(p)) {
                            additive.push_back(p);
                            grew = true;
                        }
                    }
                }
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

}  // namespace bbring::blackbox
