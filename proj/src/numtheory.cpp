#include "bbring/numtheory.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace bbring::nt {

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::optional<u64> checked_mul(u64 a, u64 b) {
    u128 p = static_cast<u128>(a) * b;
    if (p > static_cast<u128>(~u64{0})) return std::nullopt;
    return static_cast<u64>(p);
}

std::optional<u64> checked_lcm(u64 a, u64 b) {
    if (a == 0 || b == 0) return u64{0};
    return checked_mul(a / std::gcd(a, b), b);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            factor_into(n / p, out);
            return;
        }
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<u64> primes;
    factor_into(n, primes);
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (auto [p, e] : factorize(n)) out.push_back(p);
    return out;
}

u64 totient(u64 n) {
    if (n == 0) return 0;
    u64 result = n;
    for (auto [p, e] : factorize(n)) result -= result / p;
    return result;
}

unsigned bit_length(u64 n) { return static_cast<unsigned>(std::bit_width(n)); }

}  // namespace bbring::nt
