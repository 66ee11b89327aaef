#include "bbring/bruteforce.hpp"

#include <algorithm>
#include <iterator>

#include "bbring/errors.hpp"

namespace bbring::bruteforce {

Enumerated::Enumerated(const RingOracle& ring, std::uint64_t cap)
    : ring_(&ring), elements_(blackbox::brute_force_enumerate(ring, cap)) {
    for (ElementCode x : elements_) {
        if (add(x, x) == x) {
            zero_ = x;
            break;
        }
    }
    for (ElementCode e : elements_) {
        bool ok = true;
        for (ElementCode g : ring.generators())
            if (mul(e, g) != g || mul(g, e) != g) {
                ok = false;
                break;
            }
        if (ok) {
            one_ = e;
            break;
        }
    }
}

std::uint64_t Enumerated::additive_order(ElementCode a) const {
    std::uint64_t k = 1;
    for (ElementCode x = a; x != zero_; x = add(x, a)) ++k;
    return k;
}

ElementCode Enumerated::scale(std::uint64_t k, ElementCode a) const {
    ElementCode acc = zero_;
    for (std::uint64_t i = 0; i < k; ++i) acc = add(acc, a);
    return acc;
}

ElementSet Enumerated::additive_closure(const std::vector<ElementCode>& gens) const {
    ElementSet out{zero_};
    std::vector<ElementCode> frontier{zero_};
    while (!frontier.empty()) {
        const ElementCode x = frontier.back();
        frontier.pop_back();
        for (ElementCode g : gens) {
            const ElementCode y = add(x, g);
            if (out.insert(y).second) frontier.push_back(y);
        }
    }
    return out;
}

ElementSet Enumerated::ideal_closure(Side side, const std::vector<ElementCode>& gens) const {
    ElementSet current = additive_closure(gens);
    for (;;) {
        std::vector<ElementCode> more(current.begin(), current.end());
        for (ElementCode x : current) {
            for (ElementCode r : ring_->generators()) {
                if (side != Side::right) more.push_back(mul(r, x));
                if (side != Side::left) more.push_back(mul(x, r));
            }
        }
        ElementSet next = additive_closure(more);
        if (next.size() == current.size()) return current;
        current = std::move(next);
    }
}

ElementSet Enumerated::subring_closure(const std::vector<ElementCode>& gens) const {
    ElementSet current = additive_closure(gens);
    for (;;) {
        std::vector<ElementCode> more(current.begin(), current.end());
        for (ElementCode x : current)
            for (ElementCode y : current) more.push_back(mul(x, y));
        ElementSet next = additive_closure(more);
        if (next.size() == current.size()) return current;
        current = std::move(next);
    }
}

ElementSet Enumerated::colon(const ElementSet& i, const ElementSet& j) const {
    ElementSet out;
    for (ElementCode x : elements_) {
        bool ok = true;
        for (ElementCode y : j)
            if (!i.count(mul(x, y))) {
                ok = false;
                break;
            }
        if (ok) out.insert(x);
    }
    return out;
}

ElementSet Enumerated::annihilator(const std::vector<ElementCode>& s, Side side) const {
    ElementSet out;
    for (ElementCode x : elements_) {
        bool ok = true;
        for (ElementCode y : s)
            if ((side == Side::right ? mul(y, x) : mul(x, y)) != zero_) {
                ok = false;
                break;
            }
        if (ok) out.insert(x);
    }
    return out;
}

bool Enumerated::is_unit(ElementCode r) const { return inverse(r).has_value(); }

std::optional<ElementCode> Enumerated::inverse(ElementCode r) const {
    if (!one_) return std::nullopt;
    for (ElementCode x : elements_)
        if (mul(r, x) == *one_ && mul(x, r) == *one_) return x;
    return std::nullopt;
}

ElementSet Enumerated::solutions(ElementCode a, ElementCode b) const {
    ElementSet out;
    for (ElementCode x : elements_)
        if (mul(a, x) == b) out.insert(x);
    return out;
}

bool Enumerated::quotient_is_field(const ElementSet& ideal) const {
    if (!one_ || ideal.size() == elements_.size()) return false;
    // R/I is a division ring, hence a field, iff every x outside I has a right inverse mod I.
    const ElementCode minus_one = scale(additive_order(*one_) - 1, *one_);
    for (ElementCode x : elements_) {
        if (ideal.count(x)) continue;
        bool found = false;
        for (ElementCode y : elements_) {
            if (ideal.count(add(mul(x, y), minus_one))) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

ElementSet Enumerated::kernel(const std::function<ElementCode(ElementCode)>& rho, ElementCode codomain_zero) const {
    ElementSet out;
    for (ElementCode x : elements_)
        if (rho(x) == codomain_zero) out.insert(x);
    return out;
}

ElementSet intersection(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

}  // namespace bbring::bruteforce
