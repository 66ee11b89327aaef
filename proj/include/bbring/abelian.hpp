#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "bbring/blackbox.hpp"
#include "bbring/intlinalg.hpp"
#include "bbring/qsim.hpp"

namespace bbring::abelian {

using blackbox::ElementCode;
using blackbox::RingOracle;
using intlinalg::Int;
using intlinalg::IntMatrix;
using intlinalg::IntVector;
using intlinalg::SubgroupLattice;

/// Oracle access plus a provider, with the memoized additive orders and the
/// additive identity every higher routine needs.
class Workspace {
public:
    Workspace(std::shared_ptr<const RingOracle> ring, qsim::Provider& provider);

    const RingOracle& ring() const noexcept { return *ring_; }
    const std::shared_ptr<const RingOracle>& ring_ptr() const noexcept { return ring_; }
    qsim::Provider& provider() const noexcept { return *provider_; }

    ElementCode add(ElementCode a, ElementCode b) const { return ring_->add(a, b); }
    ElementCode mul(ElementCode a, ElementCode b) const { return ring_->mul(a, b); }

    std::uint64_t order_of(ElementCode a);
    std::vector<std::uint64_t> orders_of(const std::vector<ElementCode>& elems);
    /// c * r_1 with c the additive order of the first ring generator.
    ElementCode zero();
    bool is_zero(ElementCode a) const { return ring_->add(a, a) == a; }
    ElementCode scale(const Int& k, ElementCode a);  // any k; reduced mod ord(a)
    ElementCode combine(const IntVector& coeffs, const std::vector<ElementCode>& elems);
    ElementCode negate(ElementCode a);

private:
    std::shared_ptr<const RingOracle> ring_;
    qsim::Provider* provider_;
    std::unordered_map<ElementCode, std::uint64_t, blackbox::ElementCodeHash> orders_;
    std::optional<ElementCode> zero_;
};

/// h_i = sum_j to_original(i, j) g_j and g_j = sum_i from_original(j, i) h_i.
struct InvariantFactorBasis {
    std::vector<ElementCode> h;
    std::vector<std::uint64_t> s;  // s_1 | s_2 | ...
    std::vector<ElementCode> original;
    IntMatrix to_original;
    IntMatrix from_original;

    std::size_t rank() const noexcept { return h.size(); }
    std::uint64_t order() const;
    qsim::SubgroupDescriptor descriptor(const RingOracle& ring) const;
};

InvariantFactorBasis decompose_group(Workspace& ws, const std::vector<ElementCode>& gens);

/// n(x) with x = sum n_j h_j and 0 <= n_j < s_j. Throws MembershipError.
std::vector<std::uint64_t> decompose_element(Workspace& ws, ElementCode x, const InvariantFactorBasis& basis);

/// Canonical coordinates of x + <sub> over the group of basis_R.
IntVector coset_canonical_form(Workspace& ws, ElementCode x, const InvariantFactorBasis& basis_R,
                               const SubgroupLattice& sub);

std::uint64_t subgroup_order(const InvariantFactorBasis& basis);
std::uint64_t subgroup_order(const SubgroupLattice& lattice);

}  // namespace bbring::abelian
