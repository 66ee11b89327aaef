#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bbring/blackbox.hpp"

namespace bbring::blackbox {

/// A finite ring in canonical form. Elements are indices in [0, order); an index
/// is the little-endian mixed-radix number of its additive coordinates, so
/// addition is coordinatewise for every construction.
class ConcreteRing {
public:
    explicit ConcreteRing(std::vector<std::uint64_t> moduli);
    virtual ~ConcreteRing() = default;

    std::uint64_t order() const noexcept { return order_; }
    const std::vector<std::uint64_t>& moduli() const noexcept { return moduli_; }

    std::vector<std::uint64_t> digits(std::uint64_t index) const;
    std::uint64_t from_digits(std::span<const std::uint64_t> digits) const;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    virtual std::uint64_t mul(std::uint64_t a, std::uint64_t b) const = 0;
    virtual std::uint64_t one() const = 0;
    virtual std::vector<std::uint64_t> generators() const = 0;

    /// Nested literals are wrapped so they can sit inside tuples and matrices.
    virtual std::string format(std::uint64_t index, bool nested) const = 0;
    virtual std::uint64_t parse(std::string_view literal) const = 0;

private:
    std::vector<std::uint64_t> moduli_;
    std::uint64_t order_ = 1;
};

std::unique_ptr<ConcreteRing> build_concrete_ring(const RingSpec& spec);

}  // namespace bbring::blackbox
