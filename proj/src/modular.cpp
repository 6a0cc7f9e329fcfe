#include "lca/modular.hpp"

#include <numeric>
#include <string>

namespace lca {

namespace {
constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 32;
}

Modulus factorize(std::uint64_t m) {
    if (m < 2)
        throw InvalidInput("modulus must be >= 2, got " + std::to_string(m));
    if (m > kMaxModulus)
        throw InvalidInput("modulus exceeds the 2^32 guard: " + std::to_string(m));

    Modulus result;
    result.m = m;
    std::uint64_t rest = m;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p != 0)
            continue;
        PrimePower pp{p, 0, 1};
        while (rest % p == 0) {
            rest /= p;
            pp.exponent += 1;
            pp.value *= p;
        }
        result.factors.push_back(pp);
    }
    if (rest > 1)
        result.factors.push_back(PrimePower{rest, 1, rest});
    return result;
}

Modulus prime_power_modulus(const PrimePower& pp) {
    return Modulus{pp.value, {pp}};
}

Residue add_mod(Residue a, Residue b, std::uint64_t m) {
    return (a + b) % m;
}

Residue sub_mod(Residue a, Residue b, std::uint64_t m) {
    return (a + m - b) % m;
}

Residue mul_mod(Residue a, Residue b, std::uint64_t m) {
    // a, b < m <= 2^32, so the product fits in 64 bits.
    return (a * b) % m;
}

Residue neg_mod(Residue a, std::uint64_t m) {
    return a == 0 ? 0 : m - a;
}

Residue inv_mod(Residue a, std::uint64_t m) {
    std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(a % m);
    std::int64_t x0 = 0, x1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        x0 -= q * x1;
        std::swap(x0, x1);
    }
    if (r0 != 1)
        throw NotAUnit("gcd(" + std::to_string(a) + ", " + std::to_string(m) +
                       ") = " + std::to_string(r0) + ", not a unit");
    if (x0 < 0)
        x0 += static_cast<std::int64_t>(m);
    return static_cast<Residue>(x0);
}

std::vector<Residue> crt_split(Residue a, const Modulus& m) {
    std::vector<Residue> out;
    out.reserve(m.factors.size());
    for (const auto& pp : m.factors)
        out.push_back(a % pp.value);
    return out;
}

Residue crt_combine(const std::vector<Residue>& residues, const Modulus& m) {
    if (residues.size() != m.factors.size())
        throw InvalidInput("crt_combine: got " + std::to_string(residues.size()) +
                           " residues for " + std::to_string(m.factors.size()) +
                           " prime powers");
    Residue acc = 0;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        const std::uint64_t q = m.factors[i].value;
        const std::uint64_t rest = m.m / q;
        // rest * (rest^{-1} mod q) = 1 (mod q) and = 0 modulo every other factor.
        const Residue t = mul_mod(residues[i] % q, inv_mod(rest % q, q), q);
        acc = add_mod(acc, (t * rest) % m.m, m.m);
    }
    return acc;
}

} // namespace lca
