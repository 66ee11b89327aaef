#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "bbring/blackbox.hpp"
#include "bbring/idealcore.hpp"

// Exhaustive answers for desk-scale rings. Arithmetic goes through the
// verification channel so the query ledger stays untouched.
namespace bbring::bruteforce {

using blackbox::ElementCode;
using blackbox::RingOracle;
using idealcore::Side;
using ElementSet = std::set<ElementCode>;

class Enumerated {
public:
    /// Throws CapExceededError above `cap`.
    explicit Enumerated(const RingOracle& ring, std::uint64_t cap = blackbox::kDeskCap);

    const RingOracle& ring() const noexcept { return *ring_; }
    const std::vector<ElementCode>& elements() const noexcept { return elements_; }
    std::size_t order() const noexcept { return elements_.size(); }

    ElementCode add(ElementCode a, ElementCode b) const { return ring_->verify_add(a, b); }
    ElementCode mul(ElementCode a, ElementCode b) const { return ring_->verify_mul(a, b); }
    ElementCode zero() const noexcept { return zero_; }
    std::optional<ElementCode> one() const noexcept { return one_; }
    std::uint64_t additive_order(ElementCode a) const;
    ElementCode scale(std::uint64_t k, ElementCode a) const;

    ElementSet additive_closure(const std::vector<ElementCode>& gens) const;
    ElementSet ideal_closure(Side side, const std::vector<ElementCode>& gens) const;
    /// Ring generated by `gens` (no identity adjoined).
    ElementSet subring_closure(const std::vector<ElementCode>& gens) const;

    /// {x : x j in I for all j in J}
    ElementSet colon(const ElementSet& i, const ElementSet& j) const;
    ElementSet annihilator(const std::vector<ElementCode>& s, Side side) const;
    bool is_unit(ElementCode r) const;
    std::optional<ElementCode> inverse(ElementCode r) const;
    ElementSet solutions(ElementCode a, ElementCode b) const;
    /// Quotient by a two-sided ideal is a field.
    bool quotient_is_field(const ElementSet& ideal) const;
    ElementSet kernel(const std::function<ElementCode(ElementCode)>& rho, ElementCode codomain_zero) const;

private:
    const RingOracle* ring_;
    std::vector<ElementCode> elements_;
    ElementCode zero_{};
    std::optional<ElementCode> one_;
};

ElementSet intersection(const ElementSet& a, const ElementSet& b);

}  // namespace bbring::bruteforce
