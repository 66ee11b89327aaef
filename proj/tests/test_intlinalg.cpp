#include <doctest.h>

#include <random>

#include "bbring/intlinalg.hpp"
#include "bbring/numtheory.hpp"

using namespace bbring;
using namespace bbring::intlinalg;

namespace {

IntVector iv(std::initializer_list<long> xs) {
    IntVector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

void check_snf(const IntMatrix& A) {
    const SNFResult r = smith_normal_form(A);
    CHECK(r.U * A * r.V == r.D);
    CHECK(r.V * r.V_inverse == IntMatrix::identity(A.cols()));
    const IntVector d = r.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
        if (d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
}

}  // namespace

TEST_CASE("numtheory helpers") {
    CHECK(nt::powmod(3, 4, 7) == 4);
    CHECK(nt::is_prime(101));
    CHECK_FALSE(nt::is_prime(1));
    CHECK_FALSE(nt::is_prime(91));
    CHECK(nt::totient(36) == 12);
    CHECK(nt::prime_divisors(360) == std::vector<nt::u64>{2, 3, 5});
    CHECK(nt::bit_length(16) == 5);
    CHECK_FALSE(nt::checked_mul(std::uint64_t{1} << 40, std::uint64_t{1} << 40).has_value());
    CHECK(nt::checked_lcm(4, 6) == 12u);
}

TEST_CASE("smith normal form examples") {
    SUBCASE("diag(2, 9)") {
        const auto r = smith_normal_form(IntMatrix{{2, 0}, {0, 9}});
        CHECK(r.diagonal() == iv({1, 18}));
        check_snf(IntMatrix{{2, 0}, {0, 9}});
    }
    SUBCASE("[[2,4],[6,8]]") {
        const auto r = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
        CHECK(r.diagonal() == iv({2, 4}));
    }
    SUBCASE("zero matrix") {
        const IntMatrix Z{{0, 0, 0}, {0, 0, 0}};
        const auto r = smith_normal_form(Z);
        CHECK(r.D.is_zero());
        CHECK(r.rank == 0);
    }
    SUBCASE("empty") {
        const auto r = smith_normal_form(IntMatrix{});
        CHECK(r.D.empty());
    }
}

TEST_CASE("smith normal form random round trips") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        IntMatrix A = IntMatrix::from_rows(std::vector<IntVector>(r, IntVector(c)), c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) A(i, j) = static_cast<long>(rng() % 41) - 20;
        check_snf(A);
    }
}

TEST_CASE("hermite normal form") {
    const IntMatrix H = hermite_normal_form(IntMatrix{{4, 6}, {6, 9}, {2, 3}});
    REQUIRE(H.rows() == 1);
    CHECK(H.row(0) == iv({2, 3}));
    const IntMatrix H2 = hermite_normal_form(IntMatrix{{3, 1}, {0, 5}});
    CHECK(H2(0, 0) > 0);
    CHECK(H2(1, 1) > 0);
    CHECK(H2(0, 1) >= 0);
    CHECK(H2(0, 1) < H2(1, 1));
}

TEST_CASE("integer kernel") {
    const auto k = integer_kernel(IntMatrix{{1, 2, 3}});
    CHECK(k.size() == 2);
    for (const auto& y : k) CHECK(IntMatrix{{1, 2, 3}} * y == iv({0}));
}

TEST_CASE("solve_diophantine examples") {
    SUBCASE("4x + 12y = 8") {
        const IntMatrix A{{4, 12}};
        const auto r = solve_diophantine(A, iv({8}));
        REQUIRE(r);
        CHECK(A * r.solution->particular == iv({8}));
        REQUIRE(r.solution->kernel.size() == 1);
        CHECK(A * r.solution->kernel[0] == iv({0}));
    }
    SUBCASE("2x = 1") {
        const auto r = solve_diophantine(IntMatrix{{2}}, iv({1}));
        CHECK_FALSE(r);
        REQUIRE(r.certificate);
        CHECK(r.certificate->modulus == 2);
    }
    SUBCASE("identity") {
        const auto r = solve_diophantine(IntMatrix{{1, 0}, {0, 1}}, iv({5, 7}));
        REQUIRE(r);
        CHECK(r.solution->particular == iv({5, 7}));
        CHECK(r.solution->kernel.empty());
    }
}

TEST_CASE("solve_modular examples") {
    CHECK(solve_modular(IntMatrix{{4}}, iv({8}), iv({12})).has_value());
    const auto x = solve_modular(IntMatrix{{4}}, iv({8}), iv({12}));
    CHECK((4 * (*x)[0] - 8) % 12 == 0);
    CHECK_FALSE(solve_modular(IntMatrix{{4}}, iv({2}), iv({12})).has_value());
    const auto y = solve_modular(IntMatrix{{2}}, iv({4}), iv({6}));
    REQUIRE(y);
    CHECK(((*y)[0] == 2 || (*y)[0] == 5));
}

TEST_CASE("subgroup lattice") {
    // <4> in Z_12
    const SubgroupLattice a(iv({12}), {iv({4})});
    CHECK(a.order() == 3);
    CHECK(a.index() == 4);
    CHECK(a.contains(iv({8})));
    CHECK_FALSE(a.contains(iv({2})));
    const SubgroupLattice b(iv({12}), {iv({6})});
    CHECK(a.intersect(b).order() == 1);
    CHECK(a.join(b).order() == 6);
    CHECK(SubgroupLattice::whole(iv({12})).order() == 12);
    CHECK(SubgroupLattice::trivial(iv({12})).order() == 1);
    CHECK(a.reduce(iv({9})) == a.reduce(iv({1})));

    // Z_4 with H = {0,2}: the dual is {0,2}.
    const SubgroupLattice h(iv({4}), {iv({2})});
    CHECK(h.dual().order() == 2);
    CHECK(h.dual().contains(iv({2})));

    // Z_2 x Z_9 is cyclic of order 18.
    const auto f = SubgroupLattice::whole(iv({2, 9})).invariant_factors();
    REQUIRE(f.size() == 1);
    CHECK(f[0].order == 18);
}
