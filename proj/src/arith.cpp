#include "periodlab/arith.hpp"

#include <cmath>
#include <stdexcept>

namespace periodlab {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
    return gcd64(gcd64(a, b), c);
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("inverse_mod: modulus < 1");
    if (m == 1) return 0;
    a %= m;
    if (a < 0) a += m;
    std::int64_t r0 = m, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw std::invalid_argument("inverse_mod: not coprime");
    return t0 < 0 ? t0 + m : t0;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::vector<std::uint32_t> divisor_count_sieve(std::size_t limit) {
    std::vector<std::uint32_t> d(limit + 1, 0);
    for (std::size_t i = 1; i <= limit; ++i)
        for (std::size_t j = i; j <= limit; j += i) d[j]++;
    return d;
}

std::vector<std::uint64_t> sigma_sieve(std::size_t limit, unsigned j) {
    std::vector<std::uint64_t> s(limit + 1, 0);
    for (std::size_t d = 1; d <= limit; ++d) {
        std::uint64_t dj = 1;
        for (unsigned t = 0; t < j; ++t) dj *= d;
        for (std::size_t n = d; n <= limit; n += d) s[n] += dj;
    }
    return s;
}

std::vector<std::int64_t> totient_sieve(std::size_t limit) {
    std::vector<std::int64_t> phi(limit + 1);
    for (std::size_t i = 0; i <= limit; ++i) phi[i] = static_cast<std::int64_t>(i);
    for (std::size_t p = 2; p <= limit; ++p)
        if (phi[p] == static_cast<std::int64_t>(p))  // p prime
            for (std::size_t n = p; n <= limit; n += p) phi[n] -= phi[n] / static_cast<std::int64_t>(p);
    return phi;
}

std::vector<std::int8_t> mobius_sieve(std::size_t limit) {
    std::vector<std::int8_t> mu(limit + 1, 1);
    std::vector<bool> is_comp(limit + 1, false);
    std::vector<std::size_t> primes;
    if (limit >= 1) mu[1] = 1;
    for (std::size_t i = 2; i <= limit; ++i) {
        if (!is_comp[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (std::size_t p : primes) {
            if (i * p > limit) break;
            is_comp[i * p] = true;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = static_cast<std::int8_t>(-mu[i]);
        }
    }
    return mu;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> f;
    if (n < 0) n = -n;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t r = n;
    for (auto [p, e] : factorize(n)) r -= r / p;
    return r;
}

std::uint32_t divisor_count(std::int64_t n) {
    std::uint32_t d = 1;
    for (auto [p, e] : factorize(n)) d *= static_cast<std::uint32_t>(e + 1);
    return d;
}

std::vector<std::int64_t> divisors_of(std::int64_t n) {
    std::vector<std::int64_t> divs{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t sz = divs.size();
        std::int64_t pk = 1;
        for (int t = 1; t <= e; ++t) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

double binomial(unsigned n, unsigned k) {
    if (k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (unsigned i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return std::round(r);
}

double factorial(unsigned n) {
    double r = 1.0;
    for (unsigned i = 2; i <= n; ++i) r *= static_cast<double>(i);
    return r;
}

}  // namespace periodlab
