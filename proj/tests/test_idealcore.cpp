#include <doctest.h>

#include "bbring/errors.hpp"
#include "fixture.hpp"

using namespace bbring;
using namespace bbring::idealcore;

TEST_CASE("accumulation examples") {
    Fixture f(z(12), 1);
    const auto a = accumulate_additive_generators(*f.ws, f.ideal({"4"}));
    CHECK(a.trace.augmentations == 0);
    CHECK(f.brute->additive_closure(a.elements) == f.closure(f.ideal({"4"})));

    Fixture m(m2z2(), 1);
    const auto left = m.ideal({"1,0;0,0"}, Side::left);
    const auto b = accumulate_additive_generators(*m.ws, left);
    CHECK(b.trace.augmentations == 1);
    const auto span = m.brute->additive_closure(b.elements);
    CHECK(span.size() == 4);
    CHECK(span == bruteforce::ElementSet{m("0,0;0,0"), m("1,0;0,0"), m("0,0;1,0"), m("1,0;1,0")});

    const auto zero = accumulate_additive_generators(*f.ws, f.ideal({"0"}));
    CHECK(zero.trace.augmentations == 0);
    CHECK_THROWS_AS(accumulate_additive_generators(*f.ws, IdealSpec{Side::two_sided, {}}), PreconditionError);
}

TEST_CASE("sides differ in a matrix ring") {
    Fixture m(m2z2(), 1);
    for (Side side : {Side::left, Side::right, Side::two_sided}) {
        CAPTURE(to_string(side));
        const auto spec = m.ideal({"1,0;0,0"}, side);
        const auto rep = find_basis_representation(*m.ws, spec);
        CHECK(rep.order() == m.closure(spec).size());
    }
    CHECK(find_basis_representation(*m.ws, m.ideal({"1,0;0,0"}, Side::two_sided)).order() == 16);
}

TEST_CASE("basis representation examples") {
    Fixture f(z(12), 1);
    const auto r4 = find_basis_representation(*f.ws, f.ideal({"4"}));
    CHECK(r4.basis.s == std::vector<std::uint64_t>{3});
    CHECK(r4.tensor == Tensor{{{1}}});

    const auto whole = find_basis_representation(*f.ws, f.ideal({"1"}));
    CHECK(whole.basis.s == std::vector<std::uint64_t>{12});
    CHECK(whole.tensor == Tensor{{{1}}});

    Fixture m(m2z2(), 1);
    const auto rep = find_basis_representation(*m.ws, m.ideal({"1,0;0,0"}, Side::left));
    CHECK(rep.basis.s == std::vector<std::uint64_t>{2, 2});
    const auto& h = rep.basis.h;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            auto acc = m.brute->zero();
            for (std::size_t k = 0; k < 2; ++k) acc = m.brute->add(acc, m.brute->scale(rep.tensor[i][j][k], h[k]));
            CHECK(acc == m.brute->mul(h[i], h[j]));
        }
}

TEST_CASE("F_4 tensor") {
    Fixture g(f4(), 1);
    const auto b = abelian::decompose_group(*g.ws, {g("[1]"), g("[0,1]")});
    const auto t = multiplication_tensor(*g.ws, b);
    if (b.h == std::vector<desk::ElementCode>{g("[1]"), g("[0,1]")}) {
        CHECK(t[1][1] == std::vector<std::uint64_t>{1, 1});
        CHECK(t[0][1] == std::vector<std::uint64_t>{0, 1});
    }
}

TEST_CASE("closure errors") {
    // <1+x> in Z_3[x]/(x^2): (1+x)^2 = 1+2x lies outside it.
    Fixture f(blackbox::RingSpec::polyquot(3, {0, 0, 1}), 1);
    const auto b = abelian::decompose_group(*f.ws, {f("[1,1]")});
    CHECK_THROWS_AS(multiplication_tensor(*f.ws, b), ClosureError);
}

TEST_CASE("membership witnesses") {
    Fixture f(z(12), 1);
    const auto spec = f.ideal({"4"});
    const auto rep = find_basis_representation(*f.ws, spec);
    const auto w = membership_witness(*f.ws, f("8"), rep);
    CHECK(w.evaluate(*f.ws, spec.generators, rep.multipliers) == f("8"));
    CHECK(w.to_string() == "2*(i1)");
    CHECK_THROWS_AS(membership_witness(*f.ws, f("2"), rep), MembershipError);

    const auto first = membership_witness(*f.ws, f("4"), rep);
    CHECK(first.evaluate(*f.ws, spec.generators, rep.multipliers) == f("4"));

    Fixture m(m2z2(), 1);
    const auto left = m.ideal({"1,0;0,0"}, Side::left);
    const auto mrep = find_basis_representation(*m.ws, left);
    const auto e21 = membership_witness(*m.ws, m("0,0;1,0"), mrep);
    CHECK(e21.evaluate(*m.ws, left.generators, mrep.multipliers) == m("0,0;1,0"));
    CHECK(e21.to_string().find("r") != std::string::npos);
}

TEST_CASE("provenance expressions") {
    const auto g = Provenance::generator(0);
    CHECK(g.to_string() == "i1");
    CHECK(g.as_generator() == 0u);
    const auto lm = Provenance::left_multiple(1, g);
    CHECK(lm.to_string() == "r2*i1");
    CHECK_FALSE(lm.as_generator().has_value());
    const auto c = Provenance::combination({3, 0}, {g, lm});
    CHECK(c.to_string() == "3*i1");
    CHECK(Provenance::combination({0}, {g}).to_string() == "0");
}

TEST_CASE("random ideals close correctly") {
    for (const auto& dr : desk::suite()) {
        CAPTURE(dr.name);
        Fixture f(dr.spec, 21);
        std::mt19937_64 rng(5);
        for (int i = 0; i < 15; ++i) {
            const auto spec = f.random_ideal(rng);
            const auto rep = find_basis_representation(*f.ws, spec);
            CHECK(f.brute->additive_closure(rep.basis.h) == f.closure(spec));
        }
    }
}
