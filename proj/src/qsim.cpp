#include "bbring/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bbring/errors.hpp"
#include "bbring/numtheory.hpp"
#include "qsim_groundtruth.hpp"

namespace bbring::qsim {

namespace {

constexpr int kFejerWindow = 32;

std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

unsigned bits_of(const Int& x) { return x <= 0 ? 0u : static_cast<unsigned>(mpz_sizeinbase(x.get_mpz_t(), 2)); }

std::uint64_t log2_ceil(double x) { return static_cast<std::uint64_t>(std::ceil(std::log2(x))); }

// Largest continued-fraction convergent denominator of y / q not exceeding bound.
std::uint64_t convergent_denominator(const Int& y, const Int& q, const Int& bound) {
    Int num = y, den = q;
    Int d_prev2 = 1, d_prev1 = 0;
    Int best = 1;
    while (den != 0) {
        Int a = num / den;
        Int d = a * d_prev1 + d_prev2;
        if (d > bound) break;
        if (d > 0) best = d;
        d_prev2 = d_prev1;
        d_prev1 = d;
        Int r = num - a * den;
        num = den;
        den = r;
    }
    return intlinalg::to_u64(best);
}

}  // namespace

const char* to_string(Backend b) { return b == Backend::exact ? "exact" : "sampled"; }

Provider::Provider(ProviderConfig config) : config_(config), rng_(mix(config.seed)) {
    if (config_.swap_samples < 1) throw std::invalid_argument("swap_samples must be at least 1");
    if (!(config_.epsilon > 0.0 && config_.epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
}

Provider Provider::fork(std::uint64_t salt) const {
    ProviderConfig c = config_;
    c.seed = mix(config_.seed ^ mix(salt));
    return Provider(c);
}

std::uint64_t Provider::uniform(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform: empty range");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do x = rng_();
    while (x >= limit);
    return x % n;
}

Int Provider::uniform(const Int& n) {
    if (n <= 0) throw std::invalid_argument("uniform: empty range");
    const unsigned bits = bits_of(n);
    for (;;) {
        Int x = 0;
        for (unsigned got = 0; got < bits; got += 64) {
            x <<= 64;
            x += Int(static_cast<unsigned long>(rng_()));
        }
        const unsigned extra = ((bits + 63) / 64) * 64 - bits;
        x >>= extra;
        if (x < n) return x;
    }
}

double Provider::uniform_real() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

bool Provider::bernoulli(double p) { return uniform_real() < p; }

unsigned Provider::swap_shots() const {
    // False acceptance needs every shot to read 0, each with probability <= 5/8.
    const double need = std::ceil(std::log(config_.epsilon) / std::log(5.0 / 8.0));
    return std::max(config_.swap_samples, static_cast<unsigned>(need));
}

std::size_t Provider::character_batch(std::size_t rank) const {
    const std::size_t configured = config_.character_batch ? config_.character_batch : rank + 32;
    const std::size_t needed = rank + log2_ceil(1.0 / config_.epsilon) + 2;
    return std::max(configured, needed);
}

bool Provider::swap_shot(double overlap) {
    ++stats_.swap_shots;
    return bernoulli((1.0 + overlap * overlap) / 2.0);
}

void Provider::charge_states(const SubgroupDescriptor& a, const SubgroupDescriptor& b, unsigned shots) const {
    std::uint64_t adds = 0;
    for (const SubgroupDescriptor* d : {&a, &b}) {
        for (ElementCode g : d->generators) adds += 2 * nt::bit_length(truth::additive_order(*d->ring, g));
        if (d->offset) adds += 1;
    }
    a.ring->ledger().record_add(adds * shots);
}

void Provider::charge_hiding(const HidingFunction& h, std::size_t samples) const {
    for (const HidingComponent& c : h.components) {
        std::uint64_t adds = 0;
        for (std::uint64_t s : h.orders) adds += 2 * nt::bit_length(s);
        adds += c.quotient.size();
        c.ring->ledger().record_add(adds * samples);
    }
}

namespace {

struct ExactOverlap {
    Int meet;  // |(a+A) cap (b+B)|
    Int a_order;
    Int b_order;
};

ExactOverlap exact_overlap(const SubgroupDescriptor& a, const SubgroupDescriptor& b) {
    if (a.ring != b.ring) throw PreconditionError("swap test between states of different rings");
    const SubgroupLattice la = truth::span(*a.ring, a.generators);
    const SubgroupLattice lb = truth::span(*b.ring, b.generators);
    ExactOverlap out{0, la.order(), lb.order()};
    const std::size_t t = la.dimension();
    IntVector diff(t);
    if (a.offset) {
        IntVector c = truth::coordinates(*a.ring, *a.offset);
        for (std::size_t i = 0; i < t; ++i) diff[i] += c[i];
    }
    if (b.offset) {
        IntVector c = truth::coordinates(*b.ring, *b.offset);
        for (std::size_t i = 0; i < t; ++i) diff[i] -= c[i];
    }
    if (la.join(lb).contains(diff)) out.meet = la.intersect(lb).order();
    return out;
}

}  // namespace

double Provider::coset_overlap(const SubgroupDescriptor& a, const SubgroupDescriptor& b) {
    const ExactOverlap e = exact_overlap(a, b);
    const double c = mpq_class(e.meet, std::max(e.a_order, e.b_order)).get_d();
    if (config_.backend == Backend::exact) return c;
    const unsigned t = swap_shots();
    unsigned zeros = 0;
    charge_states(a, b, t);
    for (unsigned i = 0; i < t; ++i) zeros += swap_shot(c) ? 1 : 0;
    const double c2 = 2.0 * zeros / t - 1.0;
    return std::sqrt(std::max(0.0, c2));
}

bool Provider::same_state(const SubgroupDescriptor& a, const SubgroupDescriptor& b) {
    ++stats_.decisions;
    const ExactOverlap e = exact_overlap(a, b);
    const bool equal = e.meet == e.a_order && e.meet == e.b_order;
    const unsigned t = swap_shots();
    charge_states(a, b, t);
    if (config_.backend == Backend::exact) return equal;
    const double c = mpq_class(e.meet, std::max(e.a_order, e.b_order)).get_d();
    for (unsigned i = 0; i < t; ++i)
        if (!swap_shot(c)) return false;  // an ancilla 1 certifies overlap < 1
    return true;
}

bool Provider::is_subset_decision(const SubgroupDescriptor& a, const SubgroupDescriptor& b) {
    SubgroupDescriptor joined = b;
    joined.generators.insert(joined.generators.end(), a.generators.begin(), a.generators.end());
    if (a.offset) joined.generators.push_back(*a.offset);
    SubgroupDescriptor plain = b;
    plain.offset.reset();
    joined.offset.reset();
    return same_state(plain, joined);
}

std::vector<IntVector> Provider::sample_hidden_subgroup_characters(const HidingFunction& hiding, std::size_t batch) {
    const SubgroupLattice h = truth::hidden_subgroup(hiding);
    const SubgroupLattice dual = h.dual();
    const auto factors = dual.invariant_factors();
    const IntVector& m = dual.moduli();
    charge_hiding(hiding, batch);
    std::vector<IntVector> out;
    out.reserve(batch);
    for (std::size_t s = 0; s < batch; ++s) {
        IntVector y(m.size());
        for (const auto& f : factors) {
            const Int c = uniform(f.order);
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * f.generator[i];
        }
        for (std::size_t i = 0; i < y.size(); ++i) mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), m[i].get_mpz_t());
        out.push_back(std::move(y));
    }
    stats_.characters += batch;
    return out;
}

SubgroupLattice Provider::solve_ahsp(const HidingFunction& hiding) {
    const std::size_t batch = character_batch(hiding.orders.size());
    if (config_.backend == Backend::exact) {
        SubgroupLattice h = truth::hidden_subgroup(hiding);
        charge_hiding(hiding, batch);
        return h;
    }
    const std::vector<IntVector> ys = sample_hidden_subgroup_characters(hiding, batch);
    return SubgroupLattice(intlinalg::to_int(hiding.orders), ys).dual();
}

std::optional<std::uint64_t> Provider::shor_candidate(unsigned width, std::uint64_t period) {
    ++stats_.period_runs;
    // q = 2^(2 width + 1) > N^2 with N = 2^width bounding the period.
    const unsigned qbits = 2 * width + 1;
    Int q = 1;
    q <<= qbits;
    Int bound = 1;
    bound <<= width;
    const Int c(static_cast<unsigned long>(period));
    const Int j(static_cast<unsigned long>(uniform(period)));
    const Int num = j * q;
    const Int y0 = num / c;
    const long double f = static_cast<long double>(mpq_class(num - y0 * c, c).get_d());

    // Outcome y0 + d with weight sinc^2(d - f), the large-q limit of the Fejer kernel.
    std::vector<long double> w;
    long double total = 0;
    for (int d = -kFejerWindow; d <= kFejerWindow; ++d) {
        const long double delta = d - f;
        long double v = 1.0L;
        if (std::fabs(delta) > 1e-12L) {
            const long double s = std::sin(std::numbers::pi_v<long double> * delta);
            v = s * s / (std::numbers::pi_v<long double> * std::numbers::pi_v<long double> * delta * delta);
        }
        w.push_back(v);
        total += v;
    }
    long double u = static_cast<long double>(uniform_real()) * total;
    int d = -kFejerWindow;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (u < w[i] || i + 1 == w.size()) {
            d = static_cast<int>(i) - kFejerWindow;
            break;
        }
        u -= w[i];
    }
    Int y = y0 + d;
    mpz_fdiv_r(y.get_mpz_t(), y.get_mpz_t(), q.get_mpz_t());
    const std::uint64_t den = convergent_denominator(y, q, bound);
    if (den == 0) return std::nullopt;
    return den;
}

std::uint64_t Provider::find_additive_order(const RingOracle& ring, ElementCode a) {
    const unsigned width = ring.width();
    const std::uint64_t run_cost = 2 * (2 * width + 1);
    if (config_.backend == Backend::exact) {
        ++stats_.period_runs;
        ring.ledger().record_add(run_cost);
        return truth::additive_order(ring, a);
    }
    if (ring.add(a, a) == a) return 1;
    const std::uint64_t c = truth::additive_order(ring, a);
    const std::uint64_t cap = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width);
    const std::uint64_t max_runs = 8 + 4 * log2_ceil(1.0 / config_.epsilon);
    auto kills = [&](std::uint64_t L) { return scale(ring, Int(static_cast<unsigned long>(L)) + 1, a) == a; };
    std::uint64_t L = 1;
    for (std::uint64_t run = 0; run < max_runs; ++run) {
        ring.ledger().record_add(run_cost);
        const auto cand = shor_candidate(width, c);
        if (!cand) continue;
        const auto next = nt::checked_lcm(L, *cand);
        L = (next && *next <= cap) ? *next : *cand;
        if (!kills(L)) continue;
        for (std::uint64_t p : nt::prime_divisors(L))
            while (L % p == 0 && kills(L / p)) L /= p;
        return L;
    }
    throw ProviderFailure("order finding did not converge");
}

bool Provider::coset_equal(const RingOracle& ring, const std::vector<ElementCode>& ideal, ElementCode a, ElementCode b) {
    return same_state(SubgroupDescriptor{&ring, ideal, a}, SubgroupDescriptor{&ring, ideal, b});
}

std::optional<std::uint64_t> Provider::find_multiplicative_order_in_quotient(const RingOracle& ring,
                                                                             const std::vector<ElementCode>& ideal,
                                                                             ElementCode r,
                                                                             std::uint64_t quotient_order) {
    if (is_subset_decision(SubgroupDescriptor{&ring, {}, r}, SubgroupDescriptor{&ring, ideal, std::nullopt}))
        throw PreconditionError("element lies in the ideal");
    const unsigned width = std::max(1u, nt::bit_length(quotient_order));
    const std::uint64_t run_cost = 2 * (2 * width + 1);
    const truth::PowerCycle cycle = truth::power_cycle(ring, ideal, r);
    if (config_.backend == Backend::exact) {
        ++stats_.period_runs;
        ring.ledger().record_mul(run_cost);
        if (cycle.preperiod != 0) return std::nullopt;
        return cycle.period;
    }
    // r^|S| sits on the cycle, so periods of the tail can be checked there.
    const ElementCode tail = power(ring, r, quotient_order);
    auto tail_period = [&](std::uint64_t L) { return coset_equal(ring, ideal, tail, power(ring, r, quotient_order + L)); };
    const std::uint64_t cap = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width);
    const std::uint64_t max_runs = 8 + 4 * log2_ceil(1.0 / config_.epsilon);
    std::uint64_t L = 1;
    for (std::uint64_t run = 0; run < max_runs; ++run) {
        ring.ledger().record_mul(run_cost);
        const auto cand = shor_candidate(width, cycle.period);
        if (!cand) continue;
        const auto next = nt::checked_lcm(L, *cand);
        L = (next && *next <= cap) ? *next : *cand;
        if (!tail_period(L)) continue;
        for (std::uint64_t p : nt::prime_divisors(L))
            while (L % p == 0 && tail_period(L / p)) L /= p;
        if (!coset_equal(ring, ideal, power(ring, r, 1 + L), r)) return std::nullopt;
        return L;
    }
    throw ProviderFailure("period finding did not converge");
}

std::pair<ElementCode, std::vector<std::uint64_t>> Provider::sample_uniform(const RingOracle& ring,
                                                                            const std::vector<ElementCode>& generators,
                                                                            const std::vector<std::uint64_t>& orders) {
    if (generators.empty() || generators.size() != orders.size())
        throw PreconditionError("sample_uniform needs a nonempty generating set with orders");
    std::vector<std::uint64_t> coeffs(generators.size());
    std::vector<Int> big(generators.size());
    for (std::size_t j = 0; j < generators.size(); ++j) {
        coeffs[j] = uniform(orders[j]);
        big[j] = Int(static_cast<unsigned long>(coeffs[j]));
    }
    if (auto x = combine(ring, big, generators)) return {*x, coeffs};
    return {scale(ring, Int(static_cast<unsigned long>(orders[0])), generators[0]), coeffs};
}

ElementCode scale(const RingOracle& ring, const Int& k, ElementCode a) {
    if (k < 1) throw std::invalid_argument("scale: multiplier must be positive");
    ElementCode acc = a;
    for (long bit = static_cast<long>(bits_of(k)) - 2; bit >= 0; --bit) {
        acc = ring.add(acc, acc);
        if (mpz_tstbit(k.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) acc = ring.add(acc, a);
    }
    return acc;
}

std::optional<ElementCode> combine(const RingOracle& ring, const std::vector<Int>& coeffs,
                                   const std::vector<ElementCode>& elems) {
    if (coeffs.size() != elems.size()) throw std::invalid_argument("combine: size mismatch");
    std::optional<ElementCode> acc;
    for (std::size_t j = 0; j < elems.size(); ++j) {
        if (coeffs[j] < 0) throw std::invalid_argument("combine: negative coefficient");
        if (coeffs[j] == 0) continue;
        const ElementCode term = scale(ring, coeffs[j], elems[j]);
        acc = acc ? ring.add(*acc, term) : term;
    }
    return acc;
}

ElementCode power(const RingOracle& ring, ElementCode a, std::uint64_t e) {
    if (e < 1) throw std::invalid_argument("power: exponent must be positive");
    ElementCode acc = a;
    for (int bit = static_cast<int>(nt::bit_length(e)) - 2; bit >= 0; --bit) {
        acc = ring.mul(acc, acc);
        if ((e >> bit) & 1) acc = ring.mul(acc, a);
    }
    return acc;
}

}  // namespace bbring::qsim
