#pragma once

#include "desk.hpp"

// Small convenience wrapper for example-style tests.
struct Fixture : desk::Harness {
    explicit Fixture(const bbring::blackbox::RingSpec& spec, std::uint64_t seed = 1,
                     bbring::qsim::Backend backend = bbring::qsim::Backend::exact, double epsilon = 1e-6)
        : Harness(spec, seed, backend, epsilon) {}

    desk::ElementCode operator()(std::string_view literal) const { return ring->parse_element(literal); }
    std::string show(desk::ElementCode c) const { return ring->format_element(c); }

    desk::IdealSpec ideal(std::initializer_list<std::string_view> gens,
                          desk::Side side = desk::Side::two_sided) const {
        desk::IdealSpec out{side, {}};
        for (auto g : gens) out.generators.push_back((*this)(g));
        return out;
    }
};

inline bbring::blackbox::RingSpec z(std::uint64_t n) { return bbring::blackbox::RingSpec::modular(n); }
inline bbring::blackbox::RingSpec m2z2() {
    return bbring::blackbox::RingSpec::matrix(2, bbring::blackbox::RingSpec::modular(2));
}
inline bbring::blackbox::RingSpec f4() { return bbring::blackbox::RingSpec::polyquot(2, {1, 1, 1}); }
