#include "qsim_groundtruth.hpp"

#include <map>

#include "bbring/errors.hpp"

namespace bbring::qsim::truth {

using blackbox::GroundTruth;
using intlinalg::IntMatrix;

IntVector moduli(const RingOracle& ring) { return intlinalg::to_int(GroundTruth(ring).additive_moduli()); }

IntVector coordinates(const RingOracle& ring, ElementCode code) {
    return intlinalg::to_int(GroundTruth(ring).coordinates(code));
}

SubgroupLattice span(const RingOracle& ring, const std::vector<ElementCode>& generators) {
    std::vector<IntVector> rows;
    rows.reserve(generators.size());
    for (ElementCode g : generators) rows.push_back(coordinates(ring, g));
    return SubgroupLattice(moduli(ring), rows);
}

std::uint64_t additive_order(const RingOracle& ring, ElementCode a) {
    GroundTruth gt(ring);
    const auto& m = gt.additive_moduli();
    const auto c = gt.coordinates(a);
    Int order = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
        Int mi(static_cast<unsigned long>(m[i]));
        Int ci(static_cast<unsigned long>(c[i]));
        Int g;
        mpz_gcd(g.get_mpz_t(), mi.get_mpz_t(), ci.get_mpz_t());
        Int term = mi / g;
        mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), term.get_mpz_t());
    }
    return intlinalg::to_u64(order);
}

namespace {

// Kernel of x -> sum_j x_j v_j modulo the lattice of one component.
SubgroupLattice component_kernel(const std::vector<std::uint64_t>& orders, const HidingComponent& comp) {
    const std::size_t l = orders.size();
    const SubgroupLattice q = span(*comp.ring, comp.quotient);
    const std::size_t t = q.dimension();
    if (comp.images.size() != l) throw ContractViolation("hiding component has the wrong number of images");

    std::vector<IntVector> v;
    for (ElementCode img : comp.images) v.push_back(coordinates(*comp.ring, img));
    for (std::size_t j = 0; j < l; ++j) {
        IntVector sv(t);
        for (std::size_t c = 0; c < t; ++c) sv[c] = v[j][c] * Int(static_cast<unsigned long>(orders[j]));
        if (!q.contains(sv))
            throw ContractViolation("hiding function is not constant on cosets: generator " + std::to_string(j) +
                                    " has order not dividing " + std::to_string(orders[j]));
    }
    // Rows (x | z) with x V - z B = 0.
    IntMatrix m(l + t, t);
    for (std::size_t j = 0; j < l; ++j)
        for (std::size_t c = 0; c < t; ++c) m(j, c) = v[j][c];
    for (std::size_t r = 0; r < t; ++r)
        for (std::size_t c = 0; c < t; ++c) m(l + r, c) = -q.basis()(r, c);
    std::vector<IntVector> gens;
    if (t == 0) {
        for (std::size_t j = 0; j < l; ++j) {
            IntVector e(l);
            e[j] = 1;
            gens.push_back(std::move(e));
        }
    } else {
        for (const IntVector& k : intlinalg::integer_kernel(m.transposed()))
            gens.emplace_back(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(l));
    }
    return SubgroupLattice(intlinalg::to_int(orders), gens);
}

}  // namespace

SubgroupLattice hidden_subgroup(const HidingFunction& hiding) {
    SubgroupLattice h = SubgroupLattice::whole(intlinalg::to_int(hiding.orders));
    for (const HidingComponent& comp : hiding.components) h = h.intersect(component_kernel(hiding.orders, comp));
    return h;
}

PowerCycle power_cycle(const RingOracle& ring, const std::vector<ElementCode>& ideal, ElementCode r) {
    GroundTruth gt(ring);
    const SubgroupLattice q = span(ring, ideal);
    std::map<IntVector, std::uint64_t> seen;
    ElementCode x = r;
    for (std::uint64_t k = 1;; ++k) {
        IntVector label = q.reduce(coordinates(ring, x));
        auto [it, fresh] = seen.emplace(std::move(label), k);
        if (!fresh) return {it->second - 1, k - it->second};
        x = gt.mul(x, r);
    }
}

}  // namespace bbring::qsim::truth
