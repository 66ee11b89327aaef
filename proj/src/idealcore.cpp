#include "bbring/idealcore.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "bbring/errors.hpp"

namespace bbring::idealcore {

const char* to_string(Side s) {
    switch (s) {
        case Side::left: return "left";
        case Side::right: return "right";
        case Side::two_sided: return "two";
    }
    return "?";
}

std::optional<Side> parse_side(std::string_view text) {
    if (text == "left") return Side::left;
    if (text == "right") return Side::right;
    if (text == "two" || text == "two-sided" || text == "two_sided") return Side::two_sided;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

struct Provenance::Node {
    enum class Kind { generator, left, right, combination } kind;
    std::size_t index = 0;  // generator or multiplier
    IntVector coeffs;
    std::vector<Provenance> terms;
};

Provenance Provenance::generator(std::size_t index) {
    return Provenance(std::make_shared<const Node>(Node{Node::Kind::generator, index, {}, {}}));
}

Provenance Provenance::left_multiple(std::size_t multiplier, Provenance operand) {
    return Provenance(std::make_shared<const Node>(Node{Node::Kind::left, multiplier, {}, {std::move(operand)}}));
}

Provenance Provenance::right_multiple(std::size_t multiplier, Provenance operand) {
    return Provenance(std::make_shared<const Node>(Node{Node::Kind::right, multiplier, {}, {std::move(operand)}}));
}

Provenance Provenance::combination(IntVector coeffs, std::vector<Provenance> terms) {
    if (coeffs.size() != terms.size()) throw std::invalid_argument("combination: size mismatch");
    return Provenance(std::make_shared<const Node>(Node{Node::Kind::combination, 0, std::move(coeffs), std::move(terms)}));
}

std::optional<std::size_t> Provenance::as_generator() const {
    if (node_->kind == Node::Kind::generator) return node_->index;
    return std::nullopt;
}

ElementCode Provenance::evaluate(Workspace& ws, const std::vector<ElementCode>& generators,
                                 const std::vector<ElementCode>& multipliers) const {
    std::unordered_map<const Node*, ElementCode> memo;
    auto eval = [&](auto&& self, const Node* n) -> ElementCode {
        if (auto it = memo.find(n); it != memo.end()) return it->second;
        ElementCode out;
        switch (n->kind) {
            case Node::Kind::generator:
                out = generators.at(n->index);
                break;
            case Node::Kind::left:
                out = ws.mul(multipliers.at(n->index), self(self, n->terms[0].node_.get()));
                break;
            case Node::Kind::right:
                out = ws.mul(self(self, n->terms[0].node_.get()), multipliers.at(n->index));
                break;
            case Node::Kind::combination: {
                std::vector<ElementCode> parts;
                IntVector coeffs;
                for (std::size_t i = 0; i < n->terms.size(); ++i) {
                    if (n->coeffs[i] == 0) continue;
                    parts.push_back(self(self, n->terms[i].node_.get()));
                    coeffs.push_back(n->coeffs[i]);
                }
                out = ws.combine(coeffs, parts);
                break;
            }
        }
        memo.emplace(n, out);
        return out;
    };
    return eval(eval, node_.get());
}

std::string Provenance::to_string() const {
    const Node& n = *node_;
    auto wrap = [](const Provenance& p) {
        std::string s = p.to_string();
        return p.as_generator() ? s : "(" + s + ")";
    };
    switch (n.kind) {
        case Node::Kind::generator:
            return "i" + std::to_string(n.index + 1);
        case Node::Kind::left:
            return "r" + std::to_string(n.index + 1) + "*" + wrap(n.terms[0]);
        case Node::Kind::right:
            return wrap(n.terms[0]) + "*r" + std::to_string(n.index + 1);
        case Node::Kind::combination: {
            std::string out;
            for (std::size_t i = 0; i < n.terms.size(); ++i) {
                if (n.coeffs[i] == 0) continue;
                if (!out.empty()) out += " + ";
                const std::string term = n.terms[i].node_->kind == Node::Kind::combination ? "(" + n.terms[i].to_string() + ")"
                                                                                          : n.terms[i].to_string();
                out += n.coeffs[i] == 1 ? term : n.coeffs[i].get_str() + "*" + term;
            }
            return out.empty() ? "0" : out;
        }
    }
    return {};
}

std::size_t Provenance::size() const {
    std::unordered_set<const Node*> seen;
    auto walk = [&](auto&& self, const Node* n) -> void {
        if (!seen.insert(n).second) return;
        for (const Provenance& t : n->terms) self(self, t.node_.get());
    };
    walk(walk, node_.get());
    return seen.size();
}

// ---------------------------------------------------------------------------

IdealSpec whole_ring(const blackbox::RingOracle& ring) { return IdealSpec{Side::two_sided, ring.generators()}; }

Accumulation accumulate_additive_generators(Workspace& ws, const IdealSpec& ideal,
                                            const std::vector<ElementCode>& multipliers_in) {
    if (ideal.generators.empty()) throw PreconditionError("an ideal needs at least one generator");
    const blackbox::RingOracle& ring = ws.ring();
    const std::vector<ElementCode>& multipliers = multipliers_in.empty() ? ring.generators() : multipliers_in;
    qsim::Provider& provider = ws.provider();

    Accumulation acc;
    acc.elements = ideal.generators;
    for (std::size_t i = 0; i < ideal.generators.size(); ++i) acc.provenance.push_back(Provenance::generator(i));
    acc.trace.initial = ideal.generators.size();

    std::vector<bool> sides;  // true: multiply on the left
    if (ideal.side != Side::right) sides.push_back(true);
    if (ideal.side != Side::left) sides.push_back(false);

    const std::size_t budget = static_cast<std::size_t>(std::ceil(std::log2(1.0 / provider.epsilon()))) + 4;
    const std::size_t max_rescans = budget;

    auto product = [&](bool left, ElementCode r, ElementCode b) { return left ? ws.mul(r, b) : ws.mul(b, r); };

    for (;;) {
        bool augmented = false;
        bool exhausted = false;
        const qsim::SubgroupDescriptor current{&ring, acc.elements, std::nullopt};
        for (std::size_t mi = 0; mi < multipliers.size() && !augmented && !exhausted; ++mi) {
            const ElementCode r = multipliers[mi];
            for (bool left : sides) {
                qsim::SubgroupDescriptor image{&ring, {}, std::nullopt};
                for (ElementCode b : acc.elements) image.generators.push_back(product(left, r, b));
                ++acc.trace.subset_tests;
                if (provider.is_subset_decision(image, current)) continue;

                const std::vector<std::uint64_t> orders = ws.orders_of(acc.elements);
                for (std::size_t attempt = 0; attempt < budget && !augmented; ++attempt) {
                    ++acc.trace.samples;
                    auto [y, coeffs] = provider.sample_uniform(ring, acc.elements, orders);
                    const ElementCode candidate = product(left, r, y);
                    if (provider.is_subset_decision(qsim::SubgroupDescriptor{&ring, {}, candidate}, current)) continue;
                    Provenance p = Provenance::combination(intlinalg::to_int(coeffs), acc.provenance);
                    acc.provenance.push_back(left ? Provenance::left_multiple(mi, std::move(p))
                                                  : Provenance::right_multiple(mi, std::move(p)));
                    acc.elements.push_back(candidate);
                    ++acc.trace.augmentations;
                    augmented = true;
                }
                if (!augmented) exhausted = true;
                break;
            }
        }
        if (augmented) continue;
        if (!exhausted) return acc;
        if (++acc.trace.rescans > max_rescans) {
            acc.trace.low_confidence = true;
            provider.flag_low_confidence();
            return acc;
        }
    }
}

Tensor multiplication_tensor(Workspace& ws, const InvariantFactorBasis& basis) {
    const std::size_t l = basis.rank();
    Tensor m(l, std::vector<std::vector<std::uint64_t>>(l));
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            const ElementCode p = ws.mul(basis.h[i], basis.h[j]);
            try {
                m[i][j] = abelian::decompose_element(ws, p, basis);
            } catch (const MembershipError&) {
                throw ClosureError("h_" + std::to_string(i + 1) + " * h_" + std::to_string(j + 1) +
                                   " is outside the span of the basis");
            }
        }
    }
    return m;
}

BasisRepresentation find_basis_representation(Workspace& ws, const IdealSpec& ideal,
                                              const std::vector<ElementCode>& multipliers) {
    BasisRepresentation rep;
    rep.spec = ideal;
    rep.multipliers = multipliers.empty() ? ws.ring().generators() : multipliers;
    rep.accumulation = accumulate_additive_generators(ws, ideal, rep.multipliers);
    rep.basis = abelian::decompose_group(ws, rep.accumulation.elements);
    for (std::size_t i = 0; i < rep.basis.rank(); ++i) {
        IntVector row(rep.basis.to_original.cols());
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = rep.basis.to_original(i, j);
        // Negative entries are folded into [0, ord) so the expression stays additive.
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] >= 0) continue;
            const intlinalg::Int ord(static_cast<unsigned long>(ws.order_of(rep.accumulation.elements[j])));
            mpz_fdiv_r(row[j].get_mpz_t(), row[j].get_mpz_t(), ord.get_mpz_t());
        }
        rep.provenance.push_back(Provenance::combination(std::move(row), rep.accumulation.provenance));
    }
    rep.tensor = multiplication_tensor(ws, rep.basis);
    return rep;
}

Provenance membership_witness(Workspace& ws, ElementCode r, const BasisRepresentation& rep) {
    for (std::size_t k = 0; k < rep.spec.generators.size(); ++k)
        if (rep.spec.generators[k] == r) return Provenance::generator(k);
    const std::vector<std::uint64_t> n = abelian::decompose_element(ws, r, rep.basis);
    return Provenance::combination(intlinalg::to_int(n), rep.provenance);
}

}  // namespace bbring::idealcore
