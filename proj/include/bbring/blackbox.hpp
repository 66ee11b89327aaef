#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bbring::blackbox {

/// Opaque name of one ring element under the hidden encoding.
/// Only equality (and ordering for containers) may be used outside this module.
struct ElementCode {
    std::uint64_t bits = 0;

    friend bool operator==(ElementCode, ElementCode) = default;
    friend auto operator<=>(ElementCode, ElementCode) = default;
};

struct ElementCodeHash {
    std::size_t operator()(ElementCode c) const noexcept {
        std::uint64_t x = c.bits + 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return static_cast<std::size_t>(x ^ (x >> 31));
    }
};

inline constexpr std::uint64_t kDeskCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kMaxRingOrder = std::uint64_t{1} << 62;

struct RingSpec {
    enum class Kind { modular, product, matrix, polyquot };

    Kind kind = Kind::modular;
    std::uint64_t n = 0;              // modular
    std::vector<RingSpec> factors;    // product factors; matrix keeps its base in factors[0]
    std::size_t k = 0;                // matrix size
    std::uint64_t p = 0;              // polyquot characteristic
    std::vector<std::uint64_t> f;     // polyquot modulus, coefficients low to high

    static RingSpec modular(std::uint64_t n);
    static RingSpec product(std::vector<RingSpec> factors);
    static RingSpec matrix(std::size_t k, RingSpec base);
    static RingSpec polyquot(std::uint64_t p, std::vector<std::uint64_t> f);

    const RingSpec& base() const { return factors.at(0); }

    /// Inline form, e.g. "product(modular 2, matrix 2 over modular 3, polyquot 2 [1,1,1])".
    std::string to_string() const;

    friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

/// Throws SpecError naming the offending field.
void validate(const RingSpec& spec);

/// Ring order, or nullopt if it exceeds kMaxRingOrder.
std::optional<std::uint64_t> ring_order(const RingSpec& spec);

/// Parses the inline form produced by RingSpec::to_string. Throws ParseError.
RingSpec parse_ring_spec(std::string_view text);

/// Parses a ring description file of `ring.<key> = <value>` lines.
RingSpec parse_ring_description(std::istream& in);

class QueryLedger {
public:
    struct Snapshot {
        std::uint64_t add_count = 0;
        std::uint64_t mul_count = 0;
        std::uint64_t total() const noexcept { return add_count + mul_count; }
    };

    std::uint64_t add_count() const noexcept { return add_.load(std::memory_order_relaxed); }
    std::uint64_t mul_count() const noexcept { return mul_.load(std::memory_order_relaxed); }
    Snapshot snapshot() const noexcept { return {add_count(), mul_count()}; }

    void record_add(std::uint64_t n = 1) noexcept { add_.fetch_add(n, std::memory_order_relaxed); }
    void record_mul(std::uint64_t n = 1) noexcept { mul_.fetch_add(n, std::memory_order_relaxed); }
    void reset() noexcept {
        add_.store(0);
        mul_.store(0);
    }

private:
    std::atomic<std::uint64_t> add_{0};
    std::atomic<std::uint64_t> mul_{0};
};

class ConcreteRing;
class Scrambler;

class RingOracle {
public:
    ~RingOracle();
    RingOracle(const RingOracle&) = delete;
    RingOracle& operator=(const RingOracle&) = delete;

    /// f_+ : metered, throws InvalidCodeError on codes outside the encoding's image.
    ElementCode add(ElementCode a, ElementCode b) const;
    /// f_x : metered.
    ElementCode mul(ElementCode a, ElementCode b) const;

    const std::vector<ElementCode>& generators() const noexcept { return generators_; }
    unsigned width() const noexcept { return width_; }
    QueryLedger& ledger() const noexcept { return ledger_; }

    // Construction side: literals are how callers name elements; never used by algorithms.
    const RingSpec& spec() const noexcept { return spec_; }
    std::uint64_t seed() const noexcept { return seed_; }
    ElementCode parse_element(std::string_view literal) const;
    std::string format_element(ElementCode code) const;

    // Verification channel: not metered by the ledger, counted separately.
    ElementCode verify_add(ElementCode a, ElementCode b) const;
    ElementCode verify_mul(ElementCode a, ElementCode b) const;
    std::uint64_t verification_queries() const noexcept { return verify_.load(std::memory_order_relaxed); }

private:
    friend class GroundTruth;
    friend std::shared_ptr<RingOracle> make_ring(const RingSpec& spec, std::uint64_t seed);

    RingOracle(RingSpec spec, std::uint64_t seed);
    std::uint64_t decode(ElementCode code) const;
    ElementCode encode(std::uint64_t index) const;

    RingSpec spec_;
    std::uint64_t seed_;
    std::unique_ptr<ConcreteRing> ring_;
    std::unique_ptr<Scrambler> scrambler_;
    unsigned width_ = 0;
    std::vector<ElementCode> generators_;
    mutable QueryLedger ledger_;
    mutable std::atomic<std::uint64_t> verify_{0};
};

/// Builds the concrete ring for `spec` and hides it behind a seed-keyed encoding.
/// Identical (spec, seed) pairs give bit-identical oracles.
std::shared_ptr<RingOracle> make_ring(const RingSpec& spec, std::uint64_t seed);

/// Hidden structure of a constructed ring. Reserved for the simulation layer that
/// stands in for quantum subroutines and for brute-force verification; nothing
/// else may look behind the encoding.
class GroundTruth {
public:
    explicit GroundTruth(const RingOracle& ring) : ring_(&ring) {}

    std::uint64_t order() const;
    /// (R,+) is Z_{m_1} x ... x Z_{m_t} in these coordinates.
    const std::vector<std::uint64_t>& additive_moduli() const;
    std::vector<std::uint64_t> coordinates(ElementCode code) const;
    ElementCode from_coordinates(std::span<const std::uint64_t> coords) const;
    ElementCode element(std::uint64_t index) const;
    std::uint64_t index(ElementCode code) const;

    ElementCode add(ElementCode a, ElementCode b) const;
    ElementCode mul(ElementCode a, ElementCode b) const;
    ElementCode zero() const;
    ElementCode one() const;

private:
    const RingOracle* ring_;
};

/// Every element code, found by closing the generators under the verification
/// channel's addition and multiplication. Sorted ascending by code.
/// Throws CapExceededError when the ring order exceeds `cap`.
std::vector<ElementCode> brute_force_enumerate(const RingOracle& ring, std::uint64_t cap = kDeskCap);

/// Splits `text` on `sep` at bracket depth zero, trimming whitespace.
std::vector<std::string> split_top_level(std::string_view text, char sep);
std::string_view trim(std::string_view s);

}  // namespace bbring::blackbox
