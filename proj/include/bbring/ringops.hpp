#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "bbring/idealcore.hpp"

namespace bbring::ringops {

using abelian::Workspace;
using blackbox::ElementCode;
using blackbox::RingOracle;
using idealcore::BasisRepresentation;
using idealcore::IdealSpec;
using idealcore::Side;
using intlinalg::IntVector;
using intlinalg::SubgroupLattice;

/// A workspace together with the ring's own basis representation, computed on
/// first use and reused by every operation that works in R's coordinates.
class RingContext {
public:
    explicit RingContext(Workspace& ws) : ws_(&ws) {}

    Workspace& ws() const noexcept { return *ws_; }
    const RingOracle& ring() const noexcept { return ws_->ring(); }
    qsim::Provider& provider() const noexcept { return ws_->provider(); }

    const BasisRepresentation& ring_basis();
    BasisRepresentation ideal_basis(const IdealSpec& ideal);
    /// Additive generators of the ideal (accumulation only, no tensor).
    std::vector<ElementCode> ideal_span(const IdealSpec& ideal);

private:
    Workspace* ws_;
    std::optional<BasisRepresentation> ring_basis_;
};

/// An additive subgroup produced by a hidden-subgroup computation.
struct SubgroupResult {
    std::vector<ElementCode> generators;
    std::uint64_t order = 1;
};

bool ideal_equal(RingContext& ctx, const IdealSpec& i, const IdealSpec& j);
bool ideal_contains(RingContext& ctx, const IdealSpec& i, ElementCode r);
bool is_unit(RingContext& ctx, ElementCode r);
/// Throws PreconditionError for non-units.
ElementCode inverse(RingContext& ctx, ElementCode r);

BasisRepresentation ideal_intersection(RingContext& ctx, const IdealSpec& i, const IdealSpec& j);
/// {x : x J subset I}.
SubgroupResult colon_ideal(RingContext& ctx, const IdealSpec& i, const IdealSpec& j);
/// Left: {x : x s = 0 for s in S}. Right: {x : s x = 0}.
SubgroupResult annihilator(RingContext& ctx, const std::vector<ElementCode>& s, Side side);

std::uint64_t ideal_order(RingContext& ctx, const IdealSpec& i);
std::uint64_t ring_order(RingContext& ctx);

/// Some x with a x = b, checked through the oracle; nullopt when none exists.
std::optional<ElementCode> solve_linear(RingContext& ctx, ElementCode a, ElementCode b);

/// Two-sided identity of the span of `rep`, or nullopt when it has none.
std::optional<ElementCode> multiplicative_identity(RingContext& ctx, const BasisRepresentation& rep);
ElementCode multiplicative_identity(RingContext& ctx);

ElementCode additive_identity(RingContext& ctx);
ElementCode additive_inverse(RingContext& ctx, ElementCode r);

struct HomomorphismOracle {
    std::shared_ptr<const RingOracle> domain;
    std::shared_ptr<const RingOracle> codomain;
    std::function<ElementCode(ElementCode)> eval;
};

/// The additive map sending the k-th additive coordinate unit vector of the
/// domain to images[k]. Construction-side plumbing for tests and the CLI.
HomomorphismOracle make_additive_map(std::shared_ptr<const RingOracle> domain,
                                     std::shared_ptr<const RingOracle> codomain,
                                     const std::vector<ElementCode>& images);

/// Spot checks additivity and multiplicativity on random pairs; throws ContractViolation.
void check_homomorphism(RingContext& ctx, const HomomorphismOracle& rho, std::size_t pairs = 16);

SubgroupResult hom_kernel(RingContext& ctx, const HomomorphismOracle& rho);
bool is_injective(RingContext& ctx, const HomomorphismOracle& rho);
/// Order of the subring generated by rho(r_1..r_n) against |R'|.
bool is_surjective(RingContext& ctx, const HomomorphismOracle& rho);
std::uint64_t image_order(RingContext& ctx, const HomomorphismOracle& rho);

struct PrimeTestOptions {
    bool period_finding = false;  // use the period-finding path instead of divisor certificates
    double trial_constant = 6.0;
};

struct PrimalityVerdict {
    bool prime = false;
    std::uint64_t trials = 0;
    std::uint64_t quotient_order = 0;
    double confidence = 0.0;
    std::optional<ElementCode> witness;  // representative of a generator of S*
};

/// Requires a two-sided ideal I != R.
PrimalityVerdict is_prime_ideal(RingContext& ctx, const IdealSpec& i, const PrimeTestOptions& options = {});

/// Arithmetic in R/I through canonical coset labels.
class QuotientRing {
public:
    QuotientRing(RingContext& ctx, const std::vector<ElementCode>& ideal_span);

    const IntVector& label(ElementCode x);
    bool equal(ElementCode a, ElementCode b) { return label(a) == label(b); }
    bool is_zero(ElementCode a);
    std::uint64_t order() const noexcept { return order_; }

private:
    RingContext* ctx_;
    SubgroupLattice sub_;
    std::uint64_t order_;
    std::map<ElementCode, IntVector> labels_;
};

/// Coordinates of the additive subgroup spanned by `elems` inside R's basis.
SubgroupLattice lattice_in_ring(RingContext& ctx, const std::vector<ElementCode>& elems);

}  // namespace bbring::ringops
