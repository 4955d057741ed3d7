#include "periodlab/kloosterman.hpp"

#include <cmath>

#include "periodlab/arith.hpp"
#include "periodlab/errors.hpp"
#include "periodlab/kernels.hpp"

namespace periodlab {

namespace {

// inverse table mod prime p via the division recurrence (gcd-free)
std::vector<std::uint32_t> prime_inverse_table(std::uint32_t p) {
    std::vector<std::uint32_t> inv(p, 0);
    if (p == 1) return inv;
    inv[1] = 1;
    for (std::uint32_t i = 2; i < p; ++i)
        inv[i] = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(p - p / i) * inv[p % i]) % p);
    return inv;
}

// inverse table mod p^e by Newton lifting x -> x(2 - d x) from the prime table
std::vector<std::uint32_t> prime_power_inverse_table(std::uint32_t p, int e) {
    std::uint64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    auto base = prime_inverse_table(p);
    std::vector<std::uint32_t> inv(static_cast<std::size_t>(pe), 0);
    for (std::uint64_t d = 1; d < pe; ++d) {
        if (d % p == 0) continue;
        std::uint64_t x = base[d % p];
        std::uint64_t mod = p;
        while (mod < pe) {
            std::uint64_t next = mod * mod;  // pe < 2^31, so no overflow
            if (next > pe || next < mod) next = pe;
            std::uint64_t t = d % next * x % next;
            std::uint64_t corr = (2 + next - t) % next;
            x = x * corr % next;
            mod = next;
        }
        inv[static_cast<std::size_t>(d)] = static_cast<std::uint32_t>(x);
    }
    return inv;
}

}  // namespace

UnitTable build_unit_table(std::uint32_t c) {
    UnitTable t;
    t.c = c;
    if (c == 1) {
        t.units = {0};
        t.inverses = {0};
        return t;
    }
    auto fac = factorize(static_cast<std::int64_t>(c));

    // CRT basis: B_i = (c / p^e) * ((c / p^e)^{-1} mod p^e)
    std::vector<std::uint64_t> pe_list, basis;
    std::vector<std::vector<std::uint32_t>> inv_tables;
    for (auto [p, e] : fac) {
        std::uint64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= static_cast<std::uint64_t>(p);
        std::uint64_t rest = c / pe;
        std::uint64_t binv = pe == 1 ? 0 : static_cast<std::uint64_t>(
                                               inverse_mod(static_cast<std::int64_t>(rest % pe),
                                                           static_cast<std::int64_t>(pe)));
        pe_list.push_back(pe);
        basis.push_back(rest * binv % c);
        inv_tables.push_back(prime_power_inverse_table(static_cast<std::uint32_t>(p), e));
    }

    // unit sieve: strike multiples of each prime divisor
    std::vector<bool> shares(c, false);
    for (auto [p, e] : fac)
        for (std::uint32_t m = 0; m < c; m += static_cast<std::uint32_t>(p)) shares[m] = true;

    for (std::uint32_t d = 1; d < c; ++d) {
        if (shares[d]) continue;
        std::uint64_t inv = 0;
        for (std::size_t i = 0; i < pe_list.size(); ++i) {
            std::uint64_t local = inv_tables[i][d % pe_list[i]];
            inv = (inv + local * basis[i]) % c;
        }
        t.units.push_back(d);
        t.inverses.push_back(static_cast<std::uint32_t>(inv));
    }
    return t;
}

namespace {

KloostermanValue sum_from_table(std::int64_t m, std::int64_t n, const UnitTable& t,
                                const std::vector<double>& table) {
    const std::uint32_t c = t.c;
    std::uint32_t mr = static_cast<std::uint32_t>(((m % c) + c) % c);
    std::uint32_t nr = static_cast<std::uint32_t>(((n % c) + c) % c);
    std::complex<double> s = kernels::kloosterman_phase_sum(
        t.units.data(), t.inverses.data(), t.units.size(), mr, nr, table.data(), c);
    KloostermanValue v;
    v.m = m;
    v.n = n;
    v.c = c;
    v.value = s.real();
    v.imag_residual = std::fabs(s.imag());
    double cnt = static_cast<double>(t.units.size());
    v.rounding_error = 1.1e-16 * cnt * (std::log2(cnt + 2.0) + 6.0);
    return v;
}

}  // namespace

KloostermanValue kloosterman_sum(std::int64_t m, std::int64_t n, std::int64_t c) {
    if (c < 1) throw Error("kloosterman_sum: c must be >= 1");
    if (c == 1) return KloostermanValue{m, n, 1, 1.0, 0.0, 0.0};  // empty product convention: single term e(0)
    UnitTable t = build_unit_table(static_cast<std::uint32_t>(c));
    auto table = kernels::build_phase_table(static_cast<std::size_t>(c));
    return sum_from_table(m, n, t, table);
}

std::vector<KloostermanValue> kloosterman_rectangle(std::int64_t mmax, std::int64_t nmax,
                                                    std::int64_t c) {
    if (c < 1) throw Error("kloosterman_rectangle: c must be >= 1");
    UnitTable t = build_unit_table(static_cast<std::uint32_t>(c));
    auto table = kernels::build_phase_table(static_cast<std::size_t>(std::max<std::int64_t>(c, 1)));
    std::vector<KloostermanValue> out;
    out.reserve(static_cast<std::size_t>((mmax + 1) * (nmax + 1)));
    for (std::int64_t m = 0; m <= mmax; ++m)
        for (std::int64_t n = 0; n <= nmax; ++n)
            out.push_back(c == 1 ? KloostermanValue{m, n, 1, 1.0, 0.0, 0.0}
                                 : sum_from_table(m, n, t, table));
    return out;
}

std::int64_t ramanujan_sum(std::int64_t m, std::int64_t c) {
    if (c < 1) throw Error("ramanujan_sum: c must be >= 1");
    if (c == 1) return 1;
    std::int64_t g = m == 0 ? c : gcd64(m, c);
    std::int64_t s = 0;
    for (std::int64_t d : divisors_of(g)) {
        if (c % d != 0) continue;
        std::int64_t q = c / d;
        // mu(q) by factorization
        std::int64_t mu = 1;
        for (auto [p, e] : factorize(q)) {
            if (e > 1) { mu = 0; break; }
            mu = -mu;
        }
        s += d * mu;
    }
    return s;
}

WeilCheck weil_check(std::int64_t m, std::int64_t n, std::int64_t c) {
    WeilCheck w;
    w.m = m;
    w.n = n;
    w.c = c;
    KloostermanValue v = kloosterman_sum(m, n, c);
    w.sum_abs = std::hypot(v.value, v.imag_residual);
    std::int64_t g = gcd3(m, n, c);  // (0,0,c) gives c
    w.bound = static_cast<double>(divisor_count(c)) * std::sqrt(static_cast<double>(c)) *
              std::sqrt(static_cast<double>(g));
    w.slack = w.bound - w.sum_abs;
    w.holds = w.slack >= -1e-6;
    return w;
}

std::vector<ModuliPartialSumRow> moduli_partial_sums(std::int64_t m, std::int64_t n,
                                                     std::int64_t x_max, std::int64_t level) {
    if (level < 1 || x_max < level)
        throw Error("moduli_partial_sums: need X >= N >= 1");
    std::vector<ModuliPartialSumRow> rows;
    double running = 0.0;
    std::int64_t next_checkpoint = level;
    for (std::int64_t c = level; c <= x_max; c += level) {
        running += kloosterman_sum(m, n, c).value;
        if (c >= next_checkpoint || c + level > x_max) {
            ModuliPartialSumRow row;
            row.x = c;
            row.partial_sum = running;
            row.exponent_estimate =
                c > 1 && std::fabs(running) > 0.0
                    ? std::log(std::fabs(running)) / std::log(static_cast<double>(c))
                    : 0.0;
            rows.push_back(row);
            next_checkpoint = static_cast<std::int64_t>(static_cast<double>(next_checkpoint) * 1.3) + level;
        }
    }
    return rows;
}

}  // namespace periodlab
