#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "lca/dynamics.hpp"

using namespace lca;

namespace {

LocalRule running_example() {
    return LocalRule(factorize(4), 1, {2, 2, 1});
}

CyclicConfig config_of(std::uint64_t m, std::vector<Residue> cells) {
    return CyclicConfig(factorize(m), std::move(cells));
}

CyclicConfig random_config(std::mt19937_64& rng, const Modulus& m, std::size_t size) {
    std::vector<Residue> cells(size);
    for (auto& c : cells)
        c = rng() % m.m;
    return CyclicConfig(m, std::move(cells));
}

} // namespace

TEST_CASE("apply_cyclic examples") {
    const CyclicConfig x = config_of(4, {1, 0, 0, 0});
    CHECK(apply_cyclic(LocalRule::identity(factorize(4)), x) == x);
    CHECK(apply_cyclic(running_example(), x) == config_of(4, {0, 1, 2, 2}));
    // shift rule rotates
    const LocalRule shift(factorize(5), 1, {1});
    CHECK(apply_cyclic(shift, config_of(5, {1, 2, 3, 4})) == config_of(5, {2, 3, 4, 1}));
    CHECK_THROWS_AS(apply_cyclic(running_example(), config_of(4, {1, 2})), InvalidInput);
}

TEST_CASE("shift_cyclic basics") {
    const CyclicConfig x = config_of(4, {1, 0, 0, 0});
    CHECK(shift_cyclic(x, 0) == x);
    CHECK(shift_cyclic(x, 1) == config_of(4, {0, 0, 0, 1}));
    CHECK(shift_cyclic(x, -1) == config_of(4, {0, 1, 0, 0}));

    std::mt19937_64 rng(41);
    const Modulus m = factorize(6);
    for (int trial = 0; trial < 50; ++trial) {
        const CyclicConfig y = random_config(rng, m, 1 + rng() % 12);
        const long long a = static_cast<long long>(rng() % 21) - 10;
        const long long b = static_cast<long long>(rng() % 21) - 10;
        CHECK(shift_cyclic(shift_cyclic(y, a), b) == shift_cyclic(y, a + b));
    }
}

TEST_CASE("apply commutes with the shift") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint64_t mv = 2 + rng() % 9;
        const Modulus m = factorize(mv);
        const int width = 1 + static_cast<int>(rng() % 4);
        const int l = static_cast<int>(rng() % 9) - 4;
        std::vector<Residue> coeffs(static_cast<std::size_t>(width));
        bool any = false;
        for (auto& c : coeffs) {
            c = rng() % mv;
            any = any || c != 0;
        }
        if (!any)
            coeffs[0] = 1;
        const LocalRule f(m, l, std::move(coeffs));
        const CyclicConfig x = random_config(rng, m, static_cast<std::size_t>(width) + rng() % 10);
        CHECK(apply_cyclic(f, shift_cyclic(x, 1)) == shift_cyclic(apply_cyclic(f, x), 1));
    }
}

TEST_CASE("round trip through the inverse rule") {
    const LocalRule f = running_example();
    const LocalRule g = inverse_rule(f);
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        const CyclicConfig x = random_config(rng, f.modulus(), 9 + rng() % 8);
        CHECK(apply_cyclic(g, apply_cyclic(f, x)) == x);
    }
}

TEST_CASE("iterate matches repeated application") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint64_t mv = 2 + rng() % 7;
        const Modulus m = factorize(mv);
        const int width = 1 + static_cast<int>(rng() % 3);
        std::vector<Residue> coeffs(static_cast<std::size_t>(width));
        bool any = false;
        for (auto& c : coeffs) {
            c = rng() % mv;
            any = any || c != 0;
        }
        if (!any)
            coeffs[0] = 1;
        const LocalRule f(m, static_cast<int>(rng() % 5) - 2, std::move(coeffs));
        const unsigned n = 1 + rng() % 6;
        if (fps_pow(rule_to_fps(f), n).is_zero())
            continue; // nilpotent iterate has no rule form
        const std::size_t size =
            static_cast<std::size_t>(n) * static_cast<std::size_t>(f.width()) + rng() % 6;
        const CyclicConfig x = random_config(rng, m, size);
        CyclicConfig stepped = x;
        for (unsigned t = 0; t < n; ++t)
            stepped = apply_cyclic(f, stepped);
        CHECK(apply_cyclic(iterate_rule(f, n), x) == stepped);
    }
}

TEST_CASE("the bipermutative mod-3 rule first collides on the 8-cycle") {
    // ground truth behind the non-invertibility verdict: its symbol polynomial
    // is irreducible over F_3 with a root of order 8, so the global map stays
    // bijective on the 6-cycle and collides exactly when 8 divides N
    const LocalRule f(factorize(3), -1, {2, 2, 1});
    const auto image_count = [&](std::size_t cycle, int total) {
        std::set<std::vector<Residue>> images;
        for (int idx = 0; idx < total; ++idx) {
            int rest = idx;
            std::vector<Residue> cells(cycle);
            for (auto& c : cells) {
                c = static_cast<Residue>(rest % 3);
                rest /= 3;
            }
            images.insert(apply_cyclic(f, CyclicConfig(f.modulus(), cells)).cells());
        }
        return images.size();
    };
    CHECK(image_count(6, 729) == 729);
    CHECK(image_count(8, 6561) < 6561);
}

TEST_CASE("apply_window examples") {
    const LocalRule f = running_example();
    const Word w{1, {0, 0, 0}};
    const Word out = apply_window(f, w);
    CHECK(out.start == 0);
    CHECK(out.symbols == std::vector<Residue>{0});

    const Word hit = apply_window(f, Word{1, {1, 0, 0}});
    CHECK(hit.start == 0);
    CHECK(hit.symbols == std::vector<Residue>{2});

    const Word same = apply_window(LocalRule::identity(factorize(4)), Word{3, {1, 2, 3}});
    CHECK(same == Word{3, {1, 2, 3}});

    CHECK_THROWS_AS(apply_window(f, Word{0, {1, 2}}), InvalidInput);
}

TEST_CASE("apply_window agrees with apply_cyclic away from the wrap") {
    std::mt19937_64 rng(59);
    const LocalRule f = running_example();
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t size = 8 + rng() % 6;
        const CyclicConfig x = random_config(rng, f.modulus(), size);
        const CyclicConfig y = apply_cyclic(f, x);
        Word w{0, x.cells()};
        const Word out = apply_window(f, w);
        // cyclic indices n + i stay in range for n <= size - width
        for (int n = out.start; n <= out.end(); ++n) {
            if (n < 0 || static_cast<std::size_t>(n) >= size)
                continue;
            CHECK(out.symbols[static_cast<std::size_t>(n - out.start)] ==
                  y.cell(static_cast<std::size_t>(n)));
        }
    }
}
