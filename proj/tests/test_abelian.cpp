#include <doctest.h>

#include "bbring/abelian.hpp"
#include "bbring/errors.hpp"
#include "fixture.hpp"

using namespace bbring;
using namespace bbring::abelian;

namespace {

// Recombine with the verification channel so only the decomposition is tested.
desk::ElementCode recombine(const Fixture& f, const std::vector<std::uint64_t>& n, const InvariantFactorBasis& b) {
    desk::ElementCode acc = f.brute->zero();
    for (std::size_t j = 0; j < n.size(); ++j) acc = f.brute->add(acc, f.brute->scale(n[j], b.h[j]));
    return acc;
}

}  // namespace

TEST_CASE("decompose_group examples") {
    Fixture p(blackbox::RingSpec::product({z(2), z(9)}), 3);
    const auto b = decompose_group(*p.ws, {p("(1,0)"), p("(0,1)")});
    CHECK(b.s == std::vector<std::uint64_t>{18});
    CHECK(b.order() == 18);

    Fixture f(z(12), 3);
    const auto c = decompose_group(*f.ws, {f("4"), f("6")});
    CHECK(c.s == std::vector<std::uint64_t>{6});
    CHECK(f.brute->additive_closure(c.h) == f.brute->additive_closure({f("2")}));

    const auto d = decompose_group(*f.ws, {f("9")});
    CHECK(d.s == std::vector<std::uint64_t>{4});
    CHECK(d.h == std::vector<desk::ElementCode>{f("9")});

    const auto zero = decompose_group(*f.ws, {f("0")});
    CHECK(zero.rank() == 0);
    CHECK(zero.order() == 1);
}

TEST_CASE("decompose_group change of basis") {
    Fixture m(m2z2(), 2);
    const auto gens = m.ring->generators();
    const auto b = decompose_group(*m.ws, gens);
    CHECK(b.order() == m.brute->additive_closure(gens).size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        std::vector<std::uint64_t> n;
        for (std::size_t i = 0; i < b.rank(); ++i) {
            intlinalg::Int v = b.from_original(j, i) % static_cast<long>(b.s[i]);
            if (v < 0) v += static_cast<long>(b.s[i]);
            n.push_back(intlinalg::to_u64(v));
        }
        CHECK(recombine(m, n, b) == gens[j]);
    }
}

TEST_CASE("decompose_element examples") {
    Fixture f(z(12), 4);
    const auto one = decompose_group(*f.ws, {f("1")});
    CHECK(decompose_element(*f.ws, f("7"), one) == std::vector<std::uint64_t>{7});
    const auto four = decompose_group(*f.ws, {f("4")});
    CHECK(decompose_element(*f.ws, f("8"), four) == std::vector<std::uint64_t>{2});
    CHECK_THROWS_AS(decompose_element(*f.ws, f("2"), four), MembershipError);

    Fixture g(f4(), 4);
    const auto b = decompose_group(*g.ws, {g("[1]"), g("[0,1]")});
    CHECK(b.s == std::vector<std::uint64_t>{2, 2});
    const auto n = decompose_element(*g.ws, g("[1,1]"), b);
    CHECK(recombine(g, n, b) == g("[1,1]"));
    if (b.h == std::vector<desk::ElementCode>{g("[1]"), g("[0,1]")}) CHECK(n == std::vector<std::uint64_t>{1, 1});
}

TEST_CASE("decompose_element round trips on every element") {
    for (const auto& dr : desk::suite()) {
        CAPTURE(dr.name);
        Fixture f(dr.spec, 12);
        const auto b = decompose_group(*f.ws, f.brute->elements());
        CHECK(b.order() == f.brute->order());
        for (std::size_t i = 1; i < b.s.size(); ++i) CHECK(b.s[i] % b.s[i - 1] == 0);
        for (auto x : f.brute->elements()) CHECK(recombine(f, decompose_element(*f.ws, x, b), b) == x);
    }
}

TEST_CASE("sampled decomposition") {
    Fixture f(blackbox::RingSpec::product({z(4), z(6)}), 9, qsim::Backend::sampled, 1e-3);
    const auto b = decompose_group(*f.ws, f.ring->generators());
    CHECK(b.s == std::vector<std::uint64_t>{2, 12});
    for (auto x : f.brute->elements()) CHECK(recombine(f, decompose_element(*f.ws, x, b), b) == x);
}

TEST_CASE("coset canonical forms and subgroup orders") {
    Fixture f(z(12), 4);
    const auto r = decompose_group(*f.ws, {f("1")});
    const intlinalg::SubgroupLattice sub(r.s.empty() ? intlinalg::IntVector{} : intlinalg::to_int(r.s),
                                         {intlinalg::to_int(decompose_element(*f.ws, f("4"), r))});
    CHECK(coset_canonical_form(*f.ws, f("8"), r, sub) == coset_canonical_form(*f.ws, f("0"), r, sub));
    CHECK(coset_canonical_form(*f.ws, f("5"), r, sub) == coset_canonical_form(*f.ws, f("1"), r, sub));
    CHECK(coset_canonical_form(*f.ws, f("2"), r, sub) != coset_canonical_form(*f.ws, f("1"), r, sub));
    CHECK(subgroup_order(sub) == 3);
    CHECK(subgroup_order(r) == 12);
    CHECK(subgroup_order(decompose_group(*f.ws, {f("0")})) == 1);

    const intlinalg::SubgroupLattice trivial = intlinalg::SubgroupLattice::trivial(intlinalg::to_int(r.s));
    std::set<intlinalg::IntVector> forms;
    for (auto x : f.brute->elements()) forms.insert(coset_canonical_form(*f.ws, x, r, trivial));
    CHECK(forms.size() == 12);
}

TEST_CASE("workspace helpers") {
    Fixture f(z(12), 4);
    CHECK(f.ws->order_of(f("4")) == 3);
    CHECK(f.ws->zero() == f("0"));
    CHECK(f.ws->is_zero(f("0")));
    CHECK(f.ws->negate(f("4")) == f("8"));
    CHECK(f.ws->scale(-1, f("5")) == f("7"));
    CHECK(f.ws->combine({0, 0}, {f("1"), f("2")}) == f("0"));
}
