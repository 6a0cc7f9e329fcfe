#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "lca/modular.hpp"

using namespace lca;

TEST_CASE("factorize small moduli") {
    const Modulus four = factorize(4);
    REQUIRE(four.factors.size() == 1);
    CHECK(four.factors[0].prime == 2);
    CHECK(four.factors[0].exponent == 2);
    CHECK(four.factors[0].value == 4);

    const Modulus twelve = factorize(12);
    REQUIRE(twelve.factors.size() == 2);
    CHECK(twelve.factors[0].prime == 2);
    CHECK(twelve.factors[0].exponent == 2);
    CHECK(twelve.factors[1].prime == 3);
    CHECK(twelve.factors[1].exponent == 1);

    const Modulus nine = factorize(9);
    REQUIRE(nine.factors.size() == 1);
    CHECK(nine.factors[0].prime == 3);
    CHECK(nine.factors[0].exponent == 2);
}

TEST_CASE("factorize rejects bad moduli") {
    CHECK_THROWS_AS(factorize(0), InvalidInput);
    CHECK_THROWS_AS(factorize(1), InvalidInput);
    CHECK_THROWS_AS(factorize((std::uint64_t{1} << 32) + 2), InvalidInput);
}

TEST_CASE("factorization reconstructs m") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t m = 2 + rng() % 100000;
        const Modulus modulus = factorize(m);
        std::uint64_t product = 1;
        for (std::size_t i = 0; i < modulus.factors.size(); ++i) {
            const auto& pp = modulus.factors[i];
            std::uint64_t power = 1;
            for (unsigned e = 0; e < pp.exponent; ++e)
                power *= pp.prime;
            CHECK(power == pp.value);
            if (i > 0)
                CHECK(modulus.factors[i - 1].prime < pp.prime);
            product *= pp.value;
        }
        CHECK(product == m);
    }
}

TEST_CASE("inv_mod basics") {
    CHECK(inv_mod(1, 7) == 1);
    CHECK(inv_mod(3, 4) == 3); // 3*3 = 9 = 1 mod 4
    CHECK_THROWS_AS(inv_mod(2, 4), NotAUnit);
    CHECK_THROWS_AS(inv_mod(0, 5), NotAUnit);
}

TEST_CASE("inv_mod is a two-sided inverse for units") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const std::uint64_t m = 2 + rng() % 10000;
        const Residue a = rng() % m;
        if (std::gcd(a, m) != 1) {
            CHECK_THROWS_AS(inv_mod(a, m), NotAUnit);
            continue;
        }
        const Residue b = inv_mod(a, m);
        CHECK(b < m);
        CHECK(mul_mod(a, b, m) == 1);
    }
}

TEST_CASE("crt split examples") {
    const Modulus twelve = factorize(12);
    CHECK(crt_split(7, twelve) == std::vector<Residue>{3, 1});
    CHECK(crt_split(0, twelve) == std::vector<Residue>{0, 0});
    CHECK(crt_combine({3, 1}, twelve) == 7);
}

TEST_CASE("crt round trips") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t m = 2 + rng() % 100000;
        const Modulus modulus = factorize(m);
        const Residue a = rng() % m;
        CHECK(crt_combine(crt_split(a, modulus), modulus) == a);

        // the other direction: arbitrary residue tuple
        std::vector<Residue> tuple;
        for (const auto& pp : modulus.factors)
            tuple.push_back(rng() % pp.value);
        CHECK(crt_split(crt_combine(tuple, modulus), modulus) == tuple);
    }
    CHECK_THROWS_AS(crt_combine({1}, factorize(12)), InvalidInput);
}
