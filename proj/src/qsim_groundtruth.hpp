#pragma once

#include <cstdint>
#include <vector>

#include "bbring/qsim.hpp"

// Hidden-structure computations behind both providers. Everything here works on
// additive coordinates, so subgroups are lattices and nothing is enumerated.
namespace bbring::qsim::truth {

IntVector moduli(const RingOracle& ring);
IntVector coordinates(const RingOracle& ring, ElementCode code);
SubgroupLattice span(const RingOracle& ring, const std::vector<ElementCode>& generators);
std::uint64_t additive_order(const RingOracle& ring, ElementCode a);

/// Throws ContractViolation when the rule is not well defined on Z_{orders}.
SubgroupLattice hidden_subgroup(const HidingFunction& hiding);

struct PowerCycle {
    std::uint64_t preperiod = 0;  // mu
    std::uint64_t period = 0;     // lambda
};
/// Cycle structure of r, r^2, ... modulo span(ideal).
PowerCycle power_cycle(const RingOracle& ring, const std::vector<ElementCode>& ideal, ElementCode r);

}  // namespace bbring::qsim::truth
