#include "bbring/ringops.hpp"

#include <cmath>

#include "bbring/errors.hpp"
#include "bbring/numtheory.hpp"

namespace bbring::ringops {

using abelian::InvariantFactorBasis;
using idealcore::Provenance;
using intlinalg::Int;
using intlinalg::IntMatrix;

namespace {

Int to_mpz(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

std::vector<ElementCode> lattice_elements(Workspace& ws, const SubgroupLattice& h, const std::vector<ElementCode>& basis) {
    std::vector<ElementCode> out;
    const IntMatrix& b = h.basis();
    for (std::size_t r = 0; r < b.rows(); ++r) {
        IntVector row = b.row(r);
        bool zero = true;
        for (std::size_t c = 0; c < row.size(); ++c) {
            mpz_fdiv_r(row[c].get_mpz_t(), row[c].get_mpz_t(), h.moduli()[c].get_mpz_t());
            zero = zero && row[c] == 0;
        }
        if (!zero) out.push_back(ws.combine(row, basis));
    }
    return out;
}

SubgroupResult subgroup_result(Workspace& ws, const SubgroupLattice& h, const std::vector<ElementCode>& basis) {
    SubgroupResult out;
    out.generators = lattice_elements(ws, h, basis);
    if (out.generators.empty()) out.generators.push_back(ws.zero());
    out.order = abelian::subgroup_order(h);
    return out;
}

// Basis representation of an additive subgroup already known to be multiplicatively closed.
BasisRepresentation representation_of(Workspace& ws, Side side, std::vector<ElementCode> elems) {
    if (elems.empty()) elems.push_back(ws.zero());
    BasisRepresentation rep;
    rep.spec = IdealSpec{side, elems};
    rep.multipliers = ws.ring().generators();
    rep.accumulation.elements = elems;
    for (std::size_t k = 0; k < elems.size(); ++k) rep.accumulation.provenance.push_back(Provenance::generator(k));
    rep.accumulation.trace.initial = elems.size();
    rep.basis = abelian::decompose_group(ws, elems);
    for (std::size_t i = 0; i < rep.basis.rank(); ++i) {
        IntVector row = rep.basis.to_original.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            const Int ord = to_mpz(ws.order_of(elems[j]));
            mpz_fdiv_r(row[j].get_mpz_t(), row[j].get_mpz_t(), ord.get_mpz_t());
        }
        rep.provenance.push_back(Provenance::combination(std::move(row), rep.accumulation.provenance));
    }
    rep.tensor = idealcore::multiplication_tensor(ws, rep.basis);
    return rep;
}

qsim::SubgroupDescriptor span_state(const RingOracle& ring, const std::vector<ElementCode>& elems,
                                    std::optional<ElementCode> offset = std::nullopt) {
    return qsim::SubgroupDescriptor{&ring, elems, offset};
}

}  // namespace

const BasisRepresentation& RingContext::ring_basis() {
    if (!ring_basis_) ring_basis_ = idealcore::find_basis_representation(*ws_, idealcore::whole_ring(ring()));
    return *ring_basis_;
}

BasisRepresentation RingContext::ideal_basis(const IdealSpec& ideal) {
    return idealcore::find_basis_representation(*ws_, ideal);
}

std::vector<ElementCode> RingContext::ideal_span(const IdealSpec& ideal) {
    return idealcore::accumulate_additive_generators(*ws_, ideal).elements;
}

bool ideal_equal(RingContext& ctx, const IdealSpec& i, const IdealSpec& j) {
    return ctx.provider().same_state(span_state(ctx.ring(), ctx.ideal_span(i)), span_state(ctx.ring(), ctx.ideal_span(j)));
}

bool ideal_contains(RingContext& ctx, const IdealSpec& i, ElementCode r) {
    const std::vector<ElementCode> span = ctx.ideal_span(i);
    return ctx.provider().same_state(span_state(ctx.ring(), span), span_state(ctx.ring(), span, r));
}

bool is_unit(RingContext& ctx, ElementCode r) {
    const std::vector<ElementCode>& h = ctx.ring_basis().basis.h;
    std::vector<ElementCode> rr;
    for (ElementCode x : h) rr.push_back(ctx.ws().mul(x, r));
    return ctx.provider().same_state(span_state(ctx.ring(), rr), span_state(ctx.ring(), h));
}

ElementCode inverse(RingContext& ctx, ElementCode r) {
    if (!is_unit(ctx, r)) throw PreconditionError("element is not a unit");
    const auto c = ctx.provider().find_multiplicative_order_in_quotient(ctx.ring(), {ctx.ws().zero()}, r, ring_order(ctx));
    if (!c) throw PreconditionError("element has no multiplicative order");
    if (*c == 1) return r;
    return qsim::power(ctx.ring(), r, *c - 1);
}

BasisRepresentation ideal_intersection(RingContext& ctx, const IdealSpec& i, const IdealSpec& j) {
    Workspace& ws = ctx.ws();
    const InvariantFactorBasis bi = abelian::decompose_group(ws, ctx.ideal_span(i));
    const std::vector<ElementCode> sj = ctx.ideal_span(j);
    std::vector<ElementCode> elems;
    if (bi.rank() > 0) {
        qsim::HidingFunction hiding{bi.s, {{&ctx.ring(), bi.h, sj}}};
        elems = lattice_elements(ws, ctx.provider().solve_ahsp(hiding), bi.h);
    }
    const Side side = i.side == j.side ? i.side : Side::two_sided;
    return representation_of(ws, side, std::move(elems));
}

SubgroupResult colon_ideal(RingContext& ctx, const IdealSpec& i, const IdealSpec& j) {
    Workspace& ws = ctx.ws();
    const InvariantFactorBasis& br = ctx.ring_basis().basis;
    const std::vector<ElementCode> si = ctx.ideal_span(i);
    const std::vector<ElementCode> sj = ctx.ideal_span(j);
    qsim::HidingFunction hiding{br.s, {}};
    for (ElementCode y : sj) {
        qsim::HidingComponent comp{&ctx.ring(), {}, si};
        for (ElementCode h : br.h) comp.images.push_back(ws.mul(h, y));
        hiding.components.push_back(std::move(comp));
    }
    return subgroup_result(ws, ctx.provider().solve_ahsp(hiding), br.h);
}

SubgroupResult annihilator(RingContext& ctx, const std::vector<ElementCode>& s, Side side) {
    if (side == Side::two_sided) throw PreconditionError("annihilator side must be left or right");
    Workspace& ws = ctx.ws();
    const InvariantFactorBasis& br = ctx.ring_basis().basis;
    qsim::HidingFunction hiding{br.s, {}};
    for (ElementCode y : s) {
        qsim::HidingComponent comp{&ctx.ring(), {}, {}};
        for (ElementCode h : br.h) comp.images.push_back(side == Side::left ? ws.mul(h, y) : ws.mul(y, h));
        hiding.components.push_back(std::move(comp));
    }
    return subgroup_result(ws, ctx.provider().solve_ahsp(hiding), br.h);
}

std::uint64_t ideal_order(RingContext& ctx, const IdealSpec& i) {
    return abelian::decompose_group(ctx.ws(), ctx.ideal_span(i)).order();
}

std::uint64_t ring_order(RingContext& ctx) { return ctx.ring_basis().order(); }

std::optional<ElementCode> solve_linear(RingContext& ctx, ElementCode a, ElementCode b) {
    Workspace& ws = ctx.ws();
    const BasisRepresentation& rb = ctx.ring_basis();
    const std::size_t l = rb.basis.rank();
    const std::vector<std::uint64_t> na = abelian::decompose_element(ws, a, rb.basis);
    const std::vector<std::uint64_t> nb = abelian::decompose_element(ws, b, rb.basis);
    if (l == 0) return ws.zero();
    // (a x)_i = sum_j (sum_k a_k M_kj^i) x_j
    IntMatrix A(l, l);
    IntVector rhs(l), moduli(l);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            Int acc = 0;
            for (std::size_t k = 0; k < l; ++k) acc += to_mpz(na[k]) * to_mpz(rb.tensor[k][j][i]);
            A(i, j) = acc;
        }
        rhs[i] = to_mpz(nb[i]);
        moduli[i] = to_mpz(rb.basis.s[i]);
    }
    const auto x = intlinalg::solve_modular(A, rhs, moduli);
    if (!x) return std::nullopt;
    const ElementCode candidate = ws.combine(*x, rb.basis.h);
    if (ws.mul(a, candidate) != b) throw ContractViolation("solution failed oracle substitution");
    return candidate;
}

std::optional<ElementCode> multiplicative_identity(RingContext& ctx, const BasisRepresentation& rep) {
    Workspace& ws = ctx.ws();
    const std::size_t l = rep.basis.rank();
    if (l == 0) return ws.zero();
    // e = sum_i e_i h_i is a left identity iff sum_i e_i M_ij^k == delta_jk (mod s_k).
    IntMatrix A(l * l, l);
    IntVector rhs(l * l), moduli(l * l);
    for (std::size_t j = 0; j < l; ++j) {
        for (std::size_t k = 0; k < l; ++k) {
            const std::size_t row = j * l + k;
            for (std::size_t i = 0; i < l; ++i) A(row, i) = to_mpz(rep.tensor[i][j][k]);
            rhs[row] = j == k ? 1 : 0;
            moduli[row] = to_mpz(rep.basis.s[k]);
        }
    }
    const auto e = intlinalg::solve_modular(A, rhs, moduli);
    if (!e) return std::nullopt;
    const ElementCode one = ws.combine(*e, rep.basis.h);
    for (ElementCode h : rep.basis.h)
        if (ws.mul(one, h) != h || ws.mul(h, one) != h) return std::nullopt;
    return one;
}

ElementCode multiplicative_identity(RingContext& ctx) {
    auto e = multiplicative_identity(ctx, ctx.ring_basis());
    if (!e) throw PreconditionError("ring has no multiplicative identity");
    return *e;
}

ElementCode additive_identity(RingContext& ctx) { return ctx.ws().zero(); }

ElementCode additive_inverse(RingContext& ctx, ElementCode r) { return ctx.ws().negate(r); }

// ---------------------------------------------------------------------------

HomomorphismOracle make_additive_map(std::shared_ptr<const RingOracle> domain,
                                     std::shared_ptr<const RingOracle> codomain,
                                     const std::vector<ElementCode>& images) {
    const blackbox::GroundTruth src(*domain), dst(*codomain);
    const std::vector<std::uint64_t> moduli = src.additive_moduli();
    if (images.size() != moduli.size())
        throw PreconditionError("map needs " + std::to_string(moduli.size()) + " images, got " + std::to_string(images.size()));
    auto times = [dst](std::uint64_t k, ElementCode a) {
        ElementCode acc = dst.zero();
        for (ElementCode p = a; k; k >>= 1, p = dst.add(p, p))
            if (k & 1) acc = dst.add(acc, p);
        return acc;
    };
    for (std::size_t k = 0; k < images.size(); ++k)
        if (times(moduli[k], images[k]) != dst.zero())
            throw ContractViolation("image " + std::to_string(k + 1) + " is not killed by the coordinate order");
    HomomorphismOracle rho{domain, codomain, {}};
    rho.eval = [src, dst, images, times](ElementCode x) {
        const std::vector<std::uint64_t> c = src.coordinates(x);
        ElementCode acc = dst.zero();
        for (std::size_t k = 0; k < c.size(); ++k) acc = dst.add(acc, times(c[k], images[k]));
        return acc;
    };
    return rho;
}

void check_homomorphism(RingContext& ctx, const HomomorphismOracle& rho, std::size_t pairs) {
    const InvariantFactorBasis& br = ctx.ring_basis().basis;
    if (br.rank() == 0) return;
    const RingOracle& cod = *rho.codomain;
    for (std::size_t t = 0; t < pairs; ++t) {
        const ElementCode a = ctx.provider().sample_uniform(ctx.ring(), br.h, br.s).first;
        const ElementCode b = ctx.provider().sample_uniform(ctx.ring(), br.h, br.s).first;
        const ElementCode fa = rho.eval(a), fb = rho.eval(b);
        if (rho.eval(ctx.ws().add(a, b)) != cod.add(fa, fb)) throw ContractViolation("map is not additive");
        if (rho.eval(ctx.ws().mul(a, b)) != cod.mul(fa, fb)) throw ContractViolation("map is not multiplicative");
    }
}

SubgroupResult hom_kernel(RingContext& ctx, const HomomorphismOracle& rho) {
    check_homomorphism(ctx, rho);
    const InvariantFactorBasis& br = ctx.ring_basis().basis;
    qsim::HidingFunction hiding{br.s, {{rho.codomain.get(), {}, {}}}};
    for (ElementCode h : br.h) hiding.components[0].images.push_back(rho.eval(h));
    return subgroup_result(ctx.ws(), ctx.provider().solve_ahsp(hiding), br.h);
}

bool is_injective(RingContext& ctx, const HomomorphismOracle& rho) { return hom_kernel(ctx, rho).order == 1; }

std::uint64_t image_order(RingContext& ctx, const HomomorphismOracle& rho) {
    check_homomorphism(ctx, rho);
    Workspace cws(rho.codomain, ctx.provider());
    std::vector<ElementCode> t;
    for (ElementCode r : ctx.ring().generators()) t.push_back(rho.eval(r));
    const auto acc = idealcore::accumulate_additive_generators(cws, IdealSpec{Side::two_sided, t}, t);
    return abelian::decompose_group(cws, acc.elements).order();
}

bool is_surjective(RingContext& ctx, const HomomorphismOracle& rho) {
    Workspace cws(rho.codomain, ctx.provider());
    RingContext cod(cws);
    return image_order(ctx, rho) == ring_order(cod);
}

// ---------------------------------------------------------------------------

SubgroupLattice lattice_in_ring(RingContext& ctx, const std::vector<ElementCode>& elems) {
    const InvariantFactorBasis& br = ctx.ring_basis().basis;
    std::vector<IntVector> rows;
    for (ElementCode e : elems) rows.push_back(intlinalg::to_int(abelian::decompose_element(ctx.ws(), e, br)));
    return SubgroupLattice(intlinalg::to_int(br.s), rows);
}

QuotientRing::QuotientRing(RingContext& ctx, const std::vector<ElementCode>& ideal_span)
    : ctx_(&ctx), sub_(lattice_in_ring(ctx, ideal_span)), order_(intlinalg::to_u64(sub_.index())) {}

const IntVector& QuotientRing::label(ElementCode x) {
    auto it = labels_.find(x);
    if (it == labels_.end())
        it = labels_.emplace(x, abelian::coset_canonical_form(ctx_->ws(), x, ctx_->ring_basis().basis, sub_)).first;
    return it->second;
}

bool QuotientRing::is_zero(ElementCode a) { return sub_.contains(label(a)); }

PrimalityVerdict is_prime_ideal(RingContext& ctx, const IdealSpec& i, const PrimeTestOptions& options) {
    if (i.side != Side::two_sided) throw PreconditionError("the prime test needs a two-sided ideal");
    const std::vector<ElementCode> span = ctx.ideal_span(i);
    QuotientRing quotient(ctx, span);
    const std::uint64_t s = quotient.order();
    if (s == 1) throw PreconditionError("the ideal is the whole ring");

    PrimalityVerdict verdict;
    verdict.quotient_order = s;
    const double eps = ctx.provider().epsilon();
    const auto trials = static_cast<std::uint64_t>(
        std::ceil(options.trial_constant * std::log(static_cast<double>(s)) * std::log(1.0 / eps)));
    const std::uint64_t n = s - 1;
    const std::vector<std::uint64_t> primes = nt::prime_divisors(n);
    const InvariantFactorBasis& br = ctx.ring_basis().basis;
    const RingOracle& ring = ctx.ring();

    for (std::uint64_t t = 0; t < trials; ++t) {
        ++verdict.trials;
        const ElementCode r = ctx.provider().sample_uniform(ring, br.h, br.s).first;
        if (quotient.is_zero(r)) continue;
        bool generates;
        if (options.period_finding) {
            generates = ctx.provider().find_multiplicative_order_in_quotient(ring, span, r, s) == n;
        } else {
            // r^{n+1} = r and r^{n/p+1} != r for every prime p | n pins the order of r to n.
            generates = quotient.equal(qsim::power(ring, r, n + 1), r);
            for (std::size_t k = 0; generates && k < primes.size(); ++k)
                generates = !quotient.equal(qsim::power(ring, r, n / primes[k] + 1), r);
        }
        if (generates) {
            verdict.prime = true;
            verdict.confidence = 1.0;
            verdict.witness = r;
            return verdict;
        }
    }
    const double density = static_cast<double>(nt::totient(n)) / static_cast<double>(s);
    verdict.confidence = 1.0 - std::pow(1.0 - density, static_cast<double>(verdict.trials));
    if (verdict.confidence < 1.0 - eps) ctx.provider().flag_low_confidence();
    return verdict;
}

}  // namespace bbring::ringops
