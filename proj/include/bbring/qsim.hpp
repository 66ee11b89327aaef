#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "bbring/blackbox.hpp"
#include "bbring/intlinalg.hpp"

// Stand-ins for the quantum subroutines. Both backends read hidden structure
// through GroundTruth; the sampled one only ever hands back measurement-shaped
// data (shot outcomes, characters, period-finding readouts).
namespace bbring::qsim {

using blackbox::ElementCode;
using blackbox::RingOracle;
using intlinalg::Int;
using intlinalg::IntVector;
using intlinalg::SubgroupLattice;

enum class Backend { exact, sampled };

const char* to_string(Backend b);

struct ProviderConfig {
    Backend backend = Backend::exact;
    unsigned swap_samples = 48;
    unsigned character_batch = 0;  // 0: ambient rank + 32
    double epsilon = 1e-6;
    std::uint64_t seed = 0;
};

/// Subgroup of (R,+) spanned by `generators`, or the coset offset + span.
struct SubgroupDescriptor {
    const RingOracle* ring = nullptr;
    std::vector<ElementCode> generators;
    std::optional<ElementCode> offset;
};

/// x -> (sum_j x_j images[j]) + <quotient>, one label per component.
struct HidingComponent {
    const RingOracle* ring = nullptr;
    std::vector<ElementCode> images;
    std::vector<ElementCode> quotient;
};

/// Hiding function over Z_{orders[0]} x ... x Z_{orders[l-1]}.
struct HidingFunction {
    std::vector<std::uint64_t> orders;
    std::vector<HidingComponent> components;
};

/// Counters for measured-data consumers (tests, the CLI confidence report).
struct ProviderStats {
    std::uint64_t decisions = 0;
    std::uint64_t swap_shots = 0;
    std::uint64_t characters = 0;
    std::uint64_t period_runs = 0;
};

class Provider {
public:
    explicit Provider(ProviderConfig config);

    const ProviderConfig& config() const noexcept { return config_; }
    Backend backend() const noexcept { return config_.backend; }
    double epsilon() const noexcept { return config_.epsilon; }

    /// Independent provider with a seed derived from this one's seed and `salt`.
    Provider fork(std::uint64_t salt) const;

    bool low_confidence() const noexcept { return low_confidence_; }
    void flag_low_confidence() noexcept { low_confidence_ = true; }
    const ProviderStats& stats() const noexcept { return stats_; }

    std::uint64_t uniform(std::uint64_t n);  // [0, n)
    Int uniform(const Int& n);
    bool bernoulli(double p);
    double uniform_real();

    /// Exact: |(a+A) cap (b+B)| / max(|A|,|B|). Sampled: estimate from swap shots.
    double coset_overlap(const SubgroupDescriptor& a, const SubgroupDescriptor& b);
    /// Overlap 1 versus overlap <= 1/2. Errors are one-sided: "different" is always right.
    bool same_state(const SubgroupDescriptor& a, const SubgroupDescriptor& b);
    /// A (or offset + A) contained in B, decided by comparing |B> with |B + A>.
    bool is_subset_decision(const SubgroupDescriptor& a, const SubgroupDescriptor& b);
    /// Number of swap shots one decision uses.
    unsigned swap_shots() const;

    std::vector<IntVector> sample_hidden_subgroup_characters(const HidingFunction& hiding, std::size_t batch);
    std::size_t character_batch(std::size_t rank) const;
    /// The hidden subgroup as a lattice over hiding.orders.
    SubgroupLattice solve_ahsp(const HidingFunction& hiding);

    std::uint64_t find_additive_order(const RingOracle& ring, ElementCode a);

    /// Period of r, r^2, ... modulo the additive subgroup spanned by `ideal`
    /// when the sequence is purely periodic; nullopt otherwise.
    std::optional<std::uint64_t> find_multiplicative_order_in_quotient(const RingOracle& ring,
                                                                       const std::vector<ElementCode>& ideal,
                                                                       ElementCode r,
                                                                       std::uint64_t quotient_order);

    /// Uniform element of the group spanned by `generators` (orders known), and the
    /// coefficient vector used to build it.
    std::pair<ElementCode, std::vector<std::uint64_t>> sample_uniform(const RingOracle& ring,
                                                                      const std::vector<ElementCode>& generators,
                                                                      const std::vector<std::uint64_t>& orders);

private:
    bool swap_shot(double overlap);
    void charge_states(const SubgroupDescriptor& a, const SubgroupDescriptor& b, unsigned shots) const;
    void charge_hiding(const HidingFunction& h, std::size_t samples) const;
    std::optional<std::uint64_t> shor_candidate(unsigned width, std::uint64_t period);
    bool coset_equal(const RingOracle& ring, const std::vector<ElementCode>& ideal, ElementCode a, ElementCode b);

    ProviderConfig config_;
    std::mt19937_64 rng_;
    bool low_confidence_ = false;
    ProviderStats stats_;
};

// Double-and-add through the metered oracle.
ElementCode scale(const RingOracle& ring, const Int& k, ElementCode a);  // k >= 1
/// sum_j coeffs[j] * elems[j], or nullopt when every coefficient is zero.
std::optional<ElementCode> combine(const RingOracle& ring, const std::vector<Int>& coeffs,
                                   const std::vector<ElementCode>& elems);
ElementCode power(const RingOracle& ring, ElementCode a, std::uint64_t e);  // e >= 1

}  // namespace bbring::qsim
