#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "lca/rule.hpp"

using namespace lca;

namespace {

LocalRule rule_of(std::uint64_t m, int l, std::vector<Residue> coeffs) {
    return LocalRule(factorize(m), l, std::move(coeffs));
}

// f(x_1,x_2,x_3) = 2x_1 + 2x_2 + x_3 mod 4
LocalRule running_example() {
    return rule_of(4, 1, {2, 2, 1});
}

LocalRule random_trimmed_rule(std::mt19937_64& rng, std::uint64_t m, int max_width) {
    for (;;) {
        const int width = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_width));
        const int l = static_cast<int>(rng() % 13) - 6;
        std::vector<Residue> coeffs(static_cast<std::size_t>(width));
        for (auto& c : coeffs)
            c = rng() % m;
        if (coeffs.front() != 0 && coeffs.back() != 0)
            return rule_of(m, l, std::move(coeffs));
    }
}

} // namespace

TEST_CASE("rule validation") {
    CHECK_THROWS_AS(rule_of(4, 0, {0, 4, 8}), InvalidInput);
    CHECK_THROWS_AS(rule_of(4, 0, {}), InvalidInput);
    const LocalRule f = rule_of(4, -1, {5, 2, 7});
    CHECK(f.coeffs() == std::vector<Residue>{1, 2, 3});
    CHECK(f.left() == -1);
    CHECK(f.right() == 1);
}

TEST_CASE("rule to fps round trip") {
    const LaurentPoly f = rule_to_fps(running_example());
    CHECK(f == LaurentPoly(factorize(4), 1, {2, 2, 1}));
    CHECK(fps_to_rule(f) == running_example());
    CHECK(rule_to_fps(LocalRule::identity(factorize(6))).is_one());
    CHECK_THROWS_AS(fps_to_rule(LaurentPoly::zero(factorize(4))), InvalidInput);

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const LocalRule f = random_trimmed_rule(rng, 2 + rng() % 11, 5);
        CHECK(fps_to_rule(rule_to_fps(f)) == f);
    }
}

TEST_CASE("permutativity classes") {
    const auto bi = permutativity(rule_of(3, -1, {2, 2, 1}));
    CHECK(bi.left);
    CHECK(bi.right);
    CHECK(bi.bipermutative());

    const auto right_only = permutativity(running_example());
    CHECK_FALSE(right_only.left);
    CHECK(right_only.right);

    const auto none = permutativity(rule_of(4, 0, {2, 2}));
    CHECK(none.neither());
}

TEST_CASE("invertibility") {
    CHECK(is_invertible(running_example()));
    CHECK_FALSE(is_invertible(rule_of(3, -1, {2, 2, 1})));
    CHECK(is_invertible(LocalRule::identity(factorize(9))));
}

TEST_CASE("inverse rule examples") {
    CHECK(inverse_rule(running_example()) == rule_of(4, -5, {2, 2, 1}));
    CHECK(inverse_rule(rule_of(5, 1, {1})) == rule_of(5, -1, {1}));
    CHECK(inverse_rule(rule_of(12, 0, {6, 1})) == rule_of(12, -2, {6, 1}));
    CHECK_THROWS_AS(inverse_rule(rule_of(3, -1, {2, 2, 1})), NotInvertible);
}

TEST_CASE("inverse of a one-sided permutative rule keeps the side") {
    const LocalRule g = inverse_rule(running_example());
    const auto cls = permutativity(g);
    CHECK(cls.right);
    CHECK_FALSE(cls.left);
}

TEST_CASE("compose and iterate examples") {
    const LocalRule f = running_example();
    CHECK(iterate_rule(LocalRule::identity(factorize(4)), 5).is_identity());
    CHECK(iterate_rule(f, 2) == rule_of(4, 6, {1}));
    CHECK(compose(f, inverse_rule(f)).is_identity());
    CHECK(compose(inverse_rule(f), f).is_identity());
    CHECK_THROWS_AS(compose(f, rule_of(5, 0, {1})), InvalidInput);
    CHECK_THROWS_AS(iterate_rule(f, 0), InvalidInput);
}

TEST_CASE("iterate window stays inside the formal bound") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const LocalRule f = random_trimmed_rule(rng, 2 + rng() % 7, 4);
        const unsigned n = 1 + rng() % 4;
        if (fps_pow(rule_to_fps(f), n).is_zero())
            continue; // nilpotent iterate has no rule form
        const LocalRule fn = iterate_rule(f, n);
        CHECK(fn.left() >= static_cast<int>(n) * f.left());
        CHECK(fn.right() <= static_cast<int>(n) * f.right());
    }
}

TEST_CASE("iterate preserves one-sided permutativity with powered end") {
    std::mt19937_64 rng(19);
    const std::uint64_t m = 12;
    int tested = 0;
    while (tested < 60) {
        const LocalRule f = random_trimmed_rule(rng, m, 4);
        const auto cls = permutativity(f);
        if (!cls.left && !cls.right)
            continue;
        ++tested;
        const unsigned n = 2 + rng() % 2;
        const LocalRule fn = iterate_rule(f, n);
        if (cls.right) {
            Residue expect = 1;
            for (unsigned t = 0; t < n; ++t)
                expect = mul_mod(expect, f.coeffs().back(), m);
            CHECK(fn.right() == static_cast<int>(n) * f.right());
            CHECK(fn.coeffs().back() == expect);
            CHECK(std::gcd(fn.coeffs().back(), m) == 1);
        }
        if (cls.left) {
            Residue expect = 1;
            for (unsigned t = 0; t < n; ++t)
                expect = mul_mod(expect, f.coeffs().front(), m);
            CHECK(fn.left() == static_cast<int>(n) * f.left());
            CHECK(fn.coeffs().front() == expect);
        }
    }
}

TEST_CASE("iterate is additive in the exponent") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const LocalRule f = random_trimmed_rule(rng, 2 + rng() % 9, 4);
        const unsigned a = 1 + rng() % 3, b = 1 + rng() % 3;
        if (fps_pow(rule_to_fps(f), a + b).is_zero())
            continue; // nilpotent iterate has no rule form
        CHECK(iterate_rule(f, a + b) == compose(iterate_rule(f, a), iterate_rule(f, b)));
    }
}

TEST_CASE("double inverse is the identity on rules") {
    std::mt19937_64 rng(29);
    int tested = 0;
    while (tested < 80) {
        const std::uint64_t primes[] = {2, 3, 5};
        const std::uint64_t p = primes[rng() % 3];
        const unsigned k = 1 + rng() % 3;
        std::uint64_t m = 1;
        for (unsigned e = 0; e < k; ++e)
            m *= p;
        const LocalRule f = random_trimmed_rule(rng, m, 4);
        if (!is_invertible(f))
            continue;
        ++tested;
        const LocalRule g = inverse_rule(f);
        CHECK(inverse_rule(g) == f);
        CHECK(compose(f, g).is_identity());
    }
}

TEST_CASE("inverse window containment for right-permutative prime power rules") {
    std::mt19937_64 rng(37);
    int tested = 0;
    while (tested < 60) {
        const std::uint64_t p = rng() % 2 == 0 ? 2 : 3;
        const unsigned k = 2 + rng() % 2;
        std::uint64_t m = 1;
        for (unsigned e = 0; e < k; ++e)
            m *= p;
        // unit right end, the rest multiples of p
        const int width = 2 + static_cast<int>(rng() % 3);
        const int l = static_cast<int>(rng() % 9) - 4;
        std::vector<Residue> coeffs(static_cast<std::size_t>(width));
        for (std::size_t t = 0; t + 1 < coeffs.size(); ++t)
            coeffs[t] = (p * (rng() % (m / p))) % m;
        if (coeffs.front() == 0)
            coeffs.front() = p;
        Residue u = rng() % m;
        while (std::gcd(u, p) != 1)
            u = rng() % m;
        coeffs.back() = u;
        const LocalRule f = rule_of(m, l, std::move(coeffs));
        if (!is_invertible(f))
            continue;
        ++tested;
        const int r = f.right();
        const LocalRule g = inverse_rule(f);
        CHECK(g.right() == -r);
        CHECK(g.left() >= -(static_cast<int>(k) * r - static_cast<int>(k - 1) * l));
        CHECK(g.coeff(-r) == inv_mod(f.coeff(r), m));
        for (int i = g.left(); i < g.right(); ++i)
            CHECK(g.coeff(i) % p == 0);
    }
}
