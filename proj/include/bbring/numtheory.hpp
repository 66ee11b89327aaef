#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

// Word-size number theory used by the order-finding and primality paths.
namespace bbring::nt {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 powmod(u64 base, u64 exp, u64 m);

/// lcm(a, b), or nullopt when it does not fit in 64 bits.
std::optional<u64> checked_lcm(u64 a, u64 b);
std::optional<u64> checked_mul(u64 a, u64 b);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

/// Prime factorization as (prime, exponent) pairs in ascending prime order.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);
std::vector<u64> prime_divisors(u64 n);

u64 totient(u64 n);

/// Number of bits needed to write n (bit_length(0) == 0).
unsigned bit_length(u64 n);

}  // namespace bbring::nt
