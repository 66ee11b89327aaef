#include <doctest.h>

#include <map>
#include <set>

#include "bbring/errors.hpp"
#include "fixture.hpp"

using namespace bbring;
using namespace bbring::qsim;
using intlinalg::IntVector;

namespace {

const Backend kBackends[] = {Backend::exact, Backend::sampled};

SubgroupDescriptor span(const Fixture& f, std::initializer_list<std::string_view> gens,
                        std::optional<std::string_view> offset = std::nullopt) {
    SubgroupDescriptor d{f.ring.get(), {}, std::nullopt};
    for (auto g : gens) d.generators.push_back(f(g));
    if (offset) d.offset = f(*offset);
    return d;
}

IntVector iv(std::initializer_list<long> xs) {
    IntVector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("coset overlap examples") {
    Fixture f(z(12), 4);
    auto& p = *f.provider;
    CHECK(p.coset_overlap(span(f, {"4"}), span(f, {"8"})) == doctest::Approx(1.0));
    CHECK(p.coset_overlap(span(f, {"4"}), span(f, {"0"})) == doctest::Approx(1.0 / 3.0));
    CHECK(p.coset_overlap(span(f, {"2", "3"}), span(f, {"2", "3"})) == doctest::Approx(1.0));
    CHECK(p.coset_overlap(span(f, {"4"}, "2"), span(f, {"4"})) == doctest::Approx(0.0));
}

TEST_CASE("subset decisions") {
    for (Backend backend : kBackends) {
        CAPTURE(to_string(backend));
        Fixture f(z(12), 4, backend, 1e-6);
        auto& p = *f.provider;
        CHECK(p.is_subset_decision(span(f, {}, "4"), span(f, {"4"})));
        CHECK_FALSE(p.is_subset_decision(span(f, {}, "2"), span(f, {"4"})));
        // 5 * <2> inside <2>
        CHECK(p.is_subset_decision(span(f, {"10"}), span(f, {"2"})));
        CHECK_FALSE(p.is_subset_decision(span(f, {"3"}), span(f, {"2"})));
        CHECK(p.same_state(span(f, {"2"}), span(f, {"10"})));
        CHECK_FALSE(p.same_state(span(f, {"2"}), span(f, {"3"})));
        CHECK(p.stats().decisions == 6);
    }
}

TEST_CASE("swap shot count covers epsilon") {
    Provider p({Backend::sampled, 48, 0, 1e-12, 1});
    // (5/8)^t <= 1e-12 needs t >= 59.
    CHECK(p.swap_shots() >= 59);
    Provider q({Backend::sampled, 48, 0, 1e-3, 1});
    CHECK(q.swap_shots() == 48);
}

TEST_CASE("hidden subgroup characters") {
    SUBCASE("Z_4, H = {0,2}") {
        Fixture f(z(4), 2, Backend::sampled);
        HidingFunction h{{4}, {{f.ring.get(), {f("1")}, {f("2")}}}};
        for (const auto& y : f.provider->sample_hidden_subgroup_characters(h, 200))
            CHECK((y[0] == 0 || y[0] == 2));
    }
    SUBCASE("Z_12, H = {0}") {
        Fixture f(z(12), 2, Backend::sampled);
        HidingFunction h{{12}, {{f.ring.get(), {f("1")}, {}}}};
        std::set<long> seen;
        for (const auto& y : f.provider->sample_hidden_subgroup_characters(h, 400)) seen.insert(y[0].get_si());
        CHECK(seen.size() == 12);
    }
    SUBCASE("Z_2 x Z_2, H = <(1,1)>") {
        Fixture f(z(2), 2, Backend::sampled);
        HidingFunction h{{2, 2}, {{f.ring.get(), {f("1"), f("1")}, {}}}};
        std::set<std::pair<long, long>> seen;
        for (const auto& y : f.provider->sample_hidden_subgroup_characters(h, 100))
            seen.insert({y[0].get_si(), y[1].get_si()});
        CHECK(seen == std::set<std::pair<long, long>>{{0, 0}, {1, 1}});
    }
}

TEST_CASE("abelian hidden subgroup examples") {
    for (Backend backend : kBackends) {
        CAPTURE(to_string(backend));
        Fixture f(z(12), 3, backend);
        auto& p = *f.provider;
        // m -> 4m
        const auto k = p.solve_ahsp({{12}, {{f.ring.get(), {f("4")}, {}}}});
        CHECK(k == intlinalg::SubgroupLattice(iv({12}), {iv({3})}));
        CHECK(k.order() == 4);

        Fixture g(z(6), 3, backend);
        CHECK(g.provider->solve_ahsp({{6}, {{g.ring.get(), {g("0")}, {}}}}).order() == 6);
        Fixture e(z(8), 3, backend);
        CHECK(e.provider->solve_ahsp({{8}, {{e.ring.get(), {e("1")}, {}}}}).order() == 1);
    }
}

TEST_CASE("contract violations are reported") {
    Fixture f(z(12), 3);
    // Z_5 coordinates cannot map through an element of order 12.
    HidingFunction h{{5}, {{f.ring.get(), {f("1")}, {}}}};
    CHECK_THROWS_AS(f.provider->solve_ahsp(h), ContractViolation);
}

TEST_CASE("additive orders") {
    for (Backend backend : kBackends) {
        CAPTURE(to_string(backend));
        Fixture f(z(12), 5, backend);
        CHECK(f.provider->find_additive_order(*f.ring, f("4")) == 3);
        CHECK(f.provider->find_additive_order(*f.ring, f("1")) == 12);
        CHECK(f.provider->find_additive_order(*f.ring, f("0")) == 1);
        Fixture m(m2z2(), 5, backend);
        CHECK(m.provider->find_additive_order(*m.ring, m("1,0;0,0")) == 2);
        Fixture big(z(1u << 20), 5, backend);
        CHECK(big.provider->find_additive_order(*big.ring, big("48")) == (1u << 16));
    }
}

TEST_CASE("multiplicative order in a quotient") {
    for (Backend backend : kBackends) {
        CAPTURE(to_string(backend));
        Fixture f(z(12), 6, backend);
        auto& p = *f.provider;
        CHECK(p.find_multiplicative_order_in_quotient(*f.ring, {f("3")}, f("2"), 3) == 2u);
        CHECK_FALSE(p.find_multiplicative_order_in_quotient(*f.ring, {f("4")}, f("2"), 4).has_value());
        CHECK_THROWS_AS(p.find_multiplicative_order_in_quotient(*f.ring, {f("4")}, f("8"), 4), PreconditionError);

        Fixture g(f4(), 6, backend);
        CHECK(g.provider->find_multiplicative_order_in_quotient(*g.ring, {g("[0]")}, g("[0,1]"), 4) == 3u);
    }
}

TEST_CASE("uniform sampling from a subgroup") {
    Fixture f(z(12), 8);
    std::map<std::string, int> counts;
    for (int i = 0; i < 3000; ++i) {
        const auto [code, coeffs] = f.provider->sample_uniform(*f.ring, {f("4")}, {3});
        CHECK(coeffs.size() == 1);
        counts[f.show(code)]++;
    }
    REQUIRE(counts.size() == 3);
    // Chi-square with 2 degrees of freedom; 13.8 is the 0.1% tail.
    double chi = 0;
    for (auto& [k, v] : counts) chi += (v - 1000.0) * (v - 1000.0) / 1000.0;
    CHECK(chi < 13.8);

    for (int i = 0; i < 20; ++i) CHECK(f.provider->sample_uniform(*f.ring, {f("0")}, {1}).first == f("0"));
    std::set<std::string> all;
    for (int i = 0; i < 600; ++i) all.insert(f.show(f.provider->sample_uniform(*f.ring, {f("1")}, {12}).first));
    CHECK(all.size() == 12);
}

TEST_CASE("metered helpers") {
    Fixture f(z(12), 8);
    CHECK(scale(*f.ring, 5, f("7")) == f("11"));
    CHECK(power(*f.ring, f("5"), 2) == f("1"));
    CHECK(combine(*f.ring, {2, 3}, {f("1"), f("4")}) == f("2"));
    CHECK_FALSE(combine(*f.ring, {0, 0}, {f("1"), f("4")}).has_value());
    CHECK(f.ring->ledger().snapshot().total() > 0);
}

TEST_CASE("providers are reproducible from the seed") {
    Provider a({Backend::sampled, 48, 0, 1e-3, 42});
    Provider b({Backend::sampled, 48, 0, 1e-3, 42});
    for (int i = 0; i < 10; ++i) CHECK(a.uniform(std::uint64_t{1000}) == b.uniform(std::uint64_t{1000}));
    Provider c = a.fork(1), d = b.fork(1);
    CHECK(c.uniform(std::uint64_t{1} << 40) == d.uniform(std::uint64_t{1} << 40));
}
