#include <doctest.h>

#include <random>

#include "periodlab/bigint.hpp"

using periodlab::BigInt;

TEST_CASE("construction and round-trip") {
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-1).to_string() == "-1");
    CHECK(BigInt(INT64_MAX).to_string() == "9223372036854775807");
    CHECK(BigInt(INT64_MIN).to_string() == "-9223372036854775808");
    CHECK(BigInt::from_string("123456789012345678901234567890").to_string() ==
          "123456789012345678901234567890");
    CHECK(BigInt::from_string("-000123").to_string() == "-123");
}

TEST_CASE("arithmetic against 128-bit reference") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 2000; ++trial) {
        std::int64_t a = static_cast<std::int64_t>(rng()) >> (rng() % 40);
        std::int64_t b = static_cast<std::int64_t>(rng()) >> (rng() % 40);
        __int128 sum = static_cast<__int128>(a) + b;
        __int128 prod = static_cast<__int128>(a) * b;
        CHECK(BigInt(a) + BigInt(b) == BigInt::from_int128(sum));
        CHECK(BigInt(a) - BigInt(b) == BigInt::from_int128(static_cast<__int128>(a) - b));
        CHECK(BigInt(a) * BigInt(b) == BigInt::from_int128(prod));
    }
}

TEST_CASE("multi-limb multiplication identity (a+b)^2 = a^2 + 2ab + b^2") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        BigInt a = BigInt::from_int128(static_cast<__int128>(rng()) * static_cast<__int128>(rng()));
        BigInt b = BigInt::from_int128(static_cast<__int128>(rng()) * static_cast<__int128>(rng()));
        if (rng() & 1) a.negate();
        if (rng() & 1) b.negate();
        BigInt lhs = (a + b) * (a + b);
        BigInt rhs = a * a + BigInt(2) * a * b + b * b;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("fma accumulates like separate multiply-add") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        BigInt acc = BigInt(static_cast<std::int64_t>(rng() % 1000) - 500);
        BigInt ref = acc;
        BigInt a(static_cast<std::int64_t>(rng()) >> 20);
        BigInt b(static_cast<std::int64_t>(rng()) >> 20);
        acc.fma(a, b);
        ref += a * b;
        CHECK(acc == ref);
    }
}

TEST_CASE("pow and ordering") {
    CHECK(BigInt::pow(2, 100).to_string() == "1267650600228229401496703205376");
    CHECK(BigInt::pow(10, 30) > BigInt::pow(9, 30));
    CHECK(BigInt(5) < BigInt(6));
    CHECK(BigInt(-5) > BigInt(-6));
    CHECK(BigInt::cmp_abs(BigInt(-7), BigInt(7)) == 0);
}

TEST_CASE("to_double on large values") {
    BigInt v = BigInt::pow(10, 30);
    CHECK(v.to_double() == doctest::Approx(1e30).epsilon(1e-14));
    v.negate();
    CHECK(v.to_double() == doctest::Approx(-1e30).epsilon(1e-14));
    CHECK(BigInt(12345).to_double() == 12345.0);
}

TEST_CASE("fits_int64 boundaries") {
    CHECK(BigInt(INT64_MAX).fits_int64());
    CHECK(BigInt(INT64_MIN).fits_int64());
    CHECK(BigInt(INT64_MAX).as_int64() == INT64_MAX);
    CHECK(BigInt(INT64_MIN).as_int64() == INT64_MIN);
    BigInt big = BigInt(INT64_MAX) + BigInt(1);
    CHECK(!big.fits_int64());
    BigInt small = BigInt(INT64_MIN) - BigInt(1);
    CHECK(!small.fits_int64());
}
