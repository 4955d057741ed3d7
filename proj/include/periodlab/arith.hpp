#ifndef PERIODLAB_ARITH_HPP
#define PERIODLAB_ARITH_HPP

// Elementary number-theory helpers shared across modules: sieves, divisor
// functions, modular inverses, binomials.

#include <cstdint>
#include <utility>
#include <vector>

namespace periodlab {

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c);

// Solves a*x ≡ 1 (mod m) for m >= 1, gcd(a,m) = 1; returns x in [0, m).
// m = 1 returns 0.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

// (a*b) mod m for 0 <= a,b < m < 2^63
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);

// divisor-count sieve: r[n] = d(n) for 0 <= n <= limit (r[0] unused)
std::vector<std::uint32_t> divisor_count_sieve(std::size_t limit);
// sigma_j sieve as exact unsigned 64-bit values (callers keep j*log(limit) small)
std::vector<std::uint64_t> sigma_sieve(std::size_t limit, unsigned j);
std::vector<std::int64_t> totient_sieve(std::size_t limit);
std::vector<std::int8_t> mobius_sieve(std::size_t limit);

std::int64_t euler_phi(std::int64_t n);
std::uint32_t divisor_count(std::int64_t n);
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::vector<std::int64_t> divisors_of(std::int64_t n);

double binomial(unsigned n, unsigned k);
double factorial(unsigned n);

}  // namespace periodlab

#endif
