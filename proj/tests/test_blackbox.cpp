#include <doctest.h>

#include <sstream>

#include "bbring/errors.hpp"
#include "fixture.hpp"

using namespace bbring;
using namespace bbring::blackbox;

TEST_CASE("make_ring orders and widths") {
    auto z12 = make_ring(RingSpec::modular(12), 7);
    CHECK(GroundTruth(*z12).order() == 12);
    CHECK(z12->width() >= 4);
    CHECK(GroundTruth(*make_ring(m2z2(), 1)).order() == 16);

    auto f = make_ring(f4(), 3);
    const auto all = brute_force_enumerate(*f);
    REQUIRE(all.size() == 4);
    const ElementCode zero = GroundTruth(*f).zero();
    for (ElementCode a : all)
        for (ElementCode b : all)
            if (a != zero && b != zero) CHECK(f->verify_mul(a, b) != zero);
}

TEST_CASE("spec validation names the field") {
    auto message = [](const RingSpec& s) {
        try {
            validate(s);
        } catch (const SpecError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(RingSpec::modular(1)).find("ring.n") != std::string::npos);
    CHECK(message(RingSpec::polyquot(4, {1, 1, 1})).find("ring.p") != std::string::npos);
    CHECK(message(RingSpec::polyquot(2, {1, 1, 0})).find("ring.f") != std::string::npos);
    CHECK(message(RingSpec::matrix(0, RingSpec::modular(2))).find("ring.k") != std::string::npos);
    CHECK_THROWS_AS(make_ring(RingSpec::modular(0), 1), SpecError);
}

TEST_CASE("oracle arithmetic examples") {
    Fixture r(z(12), 7);
    CHECK(r.ring->add(r("3"), r("4")) == r("7"));
    CHECK(r.ring->add(r("8"), r("8")) == r("4"));
    CHECK(r.ring->mul(r("4"), r("5")) == r("8"));
    CHECK(r.ring->ledger().add_count() == 2);
    CHECK(r.ring->ledger().mul_count() == 1);

    Fixture m(m2z2(), 1);
    CHECK(m.ring->add(m("1,0;0,0"), m("1,0;0,0")) == m("0,0;0,0"));
    CHECK(m.ring->mul(m("1,0;0,0"), m("0,1;0,0")) == m("0,1;0,0"));

    Fixture f(f4(), 3);
    CHECK(f.ring->mul(f("[0,1]"), f("[0,1]")) == f("[1,1]"));
}

TEST_CASE("verification channel leaves the ledger alone") {
    Fixture r(z(12), 2);
    const auto before = r.ring->ledger().snapshot();
    r.ring->verify_add(r("1"), r("2"));
    r.ring->verify_mul(r("3"), r("5"));
    CHECK(r.ring->ledger().snapshot().total() == before.total());
    CHECK(r.ring->verification_queries() > 0);
}

TEST_CASE("invalid codes are refused") {
    auto ring = make_ring(RingSpec::modular(12), 9);
    const auto all = brute_force_enumerate(*ring);
    std::uint64_t bad = 0;
    while (std::binary_search(all.begin(), all.end(), ElementCode{bad})) ++bad;
    CHECK_THROWS_AS(ring->add(ElementCode{bad}, all[0]), InvalidCodeError);
    CHECK_THROWS_AS(ring->mul(all[0], ElementCode{bad}), InvalidCodeError);
}

TEST_CASE("brute force enumeration") {
    CHECK(brute_force_enumerate(*make_ring(RingSpec::modular(12), 1)).size() == 12);
    CHECK(brute_force_enumerate(*make_ring(m2z2(), 1)).size() == 16);
    CHECK(brute_force_enumerate(*make_ring(RingSpec::product({z(2), z(9)}), 1)).size() == 18);
    CHECK_THROWS_AS(brute_force_enumerate(*make_ring(RingSpec::modular(1000), 1), 100), CapExceededError);
}

TEST_CASE("encodings depend on the seed only") {
    auto a = make_ring(RingSpec::modular(36), 5);
    auto b = make_ring(RingSpec::modular(36), 5);
    auto c = make_ring(RingSpec::modular(36), 6);
    CHECK(a->parse_element("17") == b->parse_element("17"));
    CHECK(a->generators() == b->generators());
    bool differs = false;
    for (int i = 0; i < 36; ++i)
        differs = differs || a->parse_element(std::to_string(i)) != c->parse_element(std::to_string(i));
    CHECK(differs);
}

TEST_CASE("literals round trip") {
    Fixture p(RingSpec::product({z(2), z(9)}));
    CHECK(p.show(p("(1,5)")) == "(1,5)");
    Fixture m(m2z2());
    CHECK(m.show(m("0,1;1,1")) == "0,1;1,1");
    CHECK_THROWS_AS(m("0,1"), ParseError);
    Fixture r(z(12));
    CHECK(r.show(r("13")) == "1");
    CHECK_THROWS_AS(r("x"), ParseError);
}

TEST_CASE("ring descriptions") {
    std::istringstream in("# a comment\nring.kind = matrix\nring.k = 2\nring.base = modular 3\n");
    const RingSpec s = parse_ring_description(in);
    CHECK(s == RingSpec::matrix(2, RingSpec::modular(3)));
    CHECK(parse_ring_spec(s.to_string()) == s);

    std::istringstream inline_form("ring = product(modular 2, polyquot 2 [1,1,1])\n");
    CHECK(parse_ring_description(inline_form) == RingSpec::product({z(2), f4()}));

    std::istringstream unknown("ring.colour = blue\n");
    CHECK_THROWS_AS(parse_ring_description(unknown), ParseError);
    CHECK_THROWS_AS(parse_ring_spec("product(modular 2"), ParseError);
}

TEST_CASE("split_top_level respects brackets") {
    const auto parts = split_top_level("(1,2), [3,4] ,5", ',');
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == "(1,2)");
    CHECK(parts[1] == "[3,4]");
    CHECK(parts[2] == "5");
}
