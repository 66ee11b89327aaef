#include "bbring/abelian.hpp"

#include <cmath>

#include "bbring/errors.hpp"
#include "bbring/numtheory.hpp"

namespace bbring::abelian {

namespace {

Int to_mpz(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

std::size_t retry_budget(double epsilon) { return static_cast<std::size_t>(std::ceil(std::log2(1.0 / epsilon))) + 4; }

}  // namespace

Workspace::Workspace(std::shared_ptr<const RingOracle> ring, qsim::Provider& provider)
    : ring_(std::move(ring)), provider_(&provider) {}

std::uint64_t Workspace::order_of(ElementCode a) {
    if (auto it = orders_.find(a); it != orders_.end()) return it->second;
    const std::uint64_t c = provider_->find_additive_order(*ring_, a);
    orders_.emplace(a, c);
    return c;
}

std::vector<std::uint64_t> Workspace::orders_of(const std::vector<ElementCode>& elems) {
    std::vector<std::uint64_t> out;
    out.reserve(elems.size());
    for (ElementCode e : elems) out.push_back(order_of(e));
    return out;
}

ElementCode Workspace::zero() {
    if (!zero_) {
        const ElementCode r = ring_->generators().at(0);
        zero_ = qsim::scale(*ring_, to_mpz(order_of(r)), r);
        orders_.emplace(*zero_, 1);
    }
    return *zero_;
}

ElementCode Workspace::scale(const Int& k, ElementCode a) {
    Int r = k;
    const Int c = to_mpz(order_of(a));
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t());
    if (r == 0) return zero();
    return qsim::scale(*ring_, r, a);
}

ElementCode Workspace::combine(const IntVector& coeffs, const std::vector<ElementCode>& elems) {
    if (coeffs.size() != elems.size()) throw std::invalid_argument("combine: size mismatch");
    std::vector<Int> reduced(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        const Int c = to_mpz(order_of(elems[j]));
        mpz_fdiv_r(reduced[j].get_mpz_t(), coeffs[j].get_mpz_t(), c.get_mpz_t());
    }
    if (auto x = qsim::combine(*ring_, reduced, elems)) return *x;
    return zero();
}

ElementCode Workspace::negate(ElementCode a) {
    const std::uint64_t c = order_of(a);
    if (c == 1) return a;
    return qsim::scale(*ring_, to_mpz(c - 1), a);
}

std::uint64_t InvariantFactorBasis::order() const { return subgroup_order(*this); }

qsim::SubgroupDescriptor InvariantFactorBasis::descriptor(const RingOracle& ring) const {
    return qsim::SubgroupDescriptor{&ring, h, std::nullopt};
}

InvariantFactorBasis decompose_group(Workspace& ws, const std::vector<ElementCode>& gens) {
    InvariantFactorBasis out;
    out.original = gens;
    const std::size_t k = gens.size();
    if (k == 0) {
        out.to_original = IntMatrix(0, 0);
        out.from_original = IntMatrix(0, 0);
        return out;
    }
    qsim::HidingFunction hiding;
    hiding.orders = ws.orders_of(gens);
    hiding.components.push_back({&ws.ring(), gens, {}});
    const SubgroupLattice relations = ws.provider().solve_ahsp(hiding);

    const intlinalg::SNFResult snf = intlinalg::smith_normal_form(relations.basis());
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < k; ++i)
        if (snf.D(i, i) != 1) kept.push_back(i);

    out.to_original = IntMatrix(kept.size(), k);
    out.from_original = IntMatrix(k, kept.size());
    for (std::size_t a = 0; a < kept.size(); ++a) {
        const std::size_t i = kept[a];
        IntVector coeffs(k);
        for (std::size_t j = 0; j < k; ++j) {
            out.to_original(a, j) = snf.V_inverse(i, j);
            out.from_original(j, a) = snf.V(j, i);
            coeffs[j] = snf.V_inverse(i, j);
        }
        out.h.push_back(ws.combine(coeffs, gens));
        out.s.push_back(intlinalg::to_u64(abs(snf.D(i, i))));
    }
    return out;
}

std::vector<std::uint64_t> decompose_element(Workspace& ws, ElementCode x, const InvariantFactorBasis& basis) {
    const RingOracle& ring = ws.ring();
    if (!ws.provider().is_subset_decision(qsim::SubgroupDescriptor{&ring, {}, x}, basis.descriptor(ring)))
        throw MembershipError("element is not in the span of the basis");
    const std::size_t l = basis.rank();
    if (l == 0) return {};

    const std::uint64_t s = ws.order_of(x);
    qsim::HidingFunction hiding;
    hiding.orders = basis.s;
    hiding.orders.push_back(s);
    std::vector<ElementCode> images = basis.h;
    images.push_back(x);
    hiding.components.push_back({&ring, images, {}});

    for (std::size_t attempt = 0, budget = retry_budget(ws.provider().epsilon()); attempt < budget; ++attempt) {
        const SubgroupLattice h = ws.provider().solve_ahsp(hiding);
        // Some element of H has last coordinate -1 mod s; its head is n(x).
        const IntMatrix& b = h.basis();
        IntMatrix a(1, b.rows());
        for (std::size_t r = 0; r < b.rows(); ++r) a(0, r) = b(r, l);
        const auto z = intlinalg::solve_modular(a, {to_mpz(s - 1)}, {to_mpz(s)});
        if (!z) continue;
        const IntVector v = intlinalg::row_times(*z, b);
        std::vector<std::uint64_t> n(l);
        IntVector coeffs(l);
        bool all_zero = true;
        for (std::size_t j = 0; j < l; ++j) {
            Int c = v[j];
            const Int sj = to_mpz(basis.s[j]);
            mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), sj.get_mpz_t());
            n[j] = intlinalg::to_u64(c);
            coeffs[j] = c;
            all_zero = all_zero && c == 0;
        }
        const bool ok = all_zero ? ws.is_zero(x) : ws.combine(coeffs, basis.h) == x;
        if (ok) return n;
    }
    throw ProviderFailure("element decomposition did not verify within the retry budget");
}

IntVector coset_canonical_form(Workspace& ws, ElementCode x, const InvariantFactorBasis& basis_R,
                               const SubgroupLattice& sub) {
    return sub.reduce(intlinalg::to_int(decompose_element(ws, x, basis_R)));
}

std::uint64_t subgroup_order(const InvariantFactorBasis& basis) {
    std::uint64_t total = 1;
    for (std::uint64_t s : basis.s) {
        auto next = nt::checked_mul(total, s);
        if (!next) throw std::overflow_error("subgroup order exceeds 64 bits");
        total = *next;
    }
    return total;
}

std::uint64_t subgroup_order(const SubgroupLattice& lattice) { return intlinalg::to_u64(lattice.order()); }

}  // namespace bbring::abelian
