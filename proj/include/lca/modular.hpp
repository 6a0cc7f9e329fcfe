#pragma once

#include <cstdint>
#include <vector>

#include "lca/errors.hpp"

namespace lca {

// Canonical residue in [0, m). m never exceeds 2^32, so products of two
// residues fit in 64 bits.
using Residue = std::uint64_t;

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;
    std::uint64_t value = 0; // prime^exponent

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A modulus m >= 2 with its prime factorization, ascending by prime.
struct Modulus {
    std::uint64_t m = 0;
    std::vector<PrimePower> factors;

    bool is_prime_power() const { return factors.size() == 1; }

    friend bool operator==(const Modulus&, const Modulus&) = default;
};

// Trial division. Throws InvalidInput unless 2 <= m <= 2^32.
Modulus factorize(std::uint64_t m);

// Modulus whose factorization is the single given prime power.
Modulus prime_power_modulus(const PrimePower& pp);

Residue add_mod(Residue a, Residue b, std::uint64_t m);
Residue sub_mod(Residue a, Residue b, std::uint64_t m);
Residue mul_mod(Residue a, Residue b, std::uint64_t m);
Residue neg_mod(Residue a, std::uint64_t m);

// b with a*b = 1 (mod m), by extended Euclid. Throws NotAUnit if gcd(a, m) != 1.
Residue inv_mod(Residue a, std::uint64_t m);

// Residues of a modulo each prime-power factor, in factor order.
std::vector<Residue> crt_split(Residue a, const Modulus& m);

// The unique residue mod m reducing to the given prime-power residues.
// Throws InvalidInput on arity mismatch with the factorization.
Residue crt_combine(const std::vector<Residue>& residues, const Modulus& m);

} // namespace lca
