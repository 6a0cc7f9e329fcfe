#pragma once

#include <string>
#include <vector>

#include "lca/modular.hpp"

namespace lca {

// Finite formal power series F(X) = sum_{i=lo}^{hi} c_i X^{-i} over Z_m.
// The exponent of X is the negated coefficient index, so multiplying two
// series convolves their coefficient sequences.
//
// Canonical form: coefficients reduced mod m and trimmed, i.e. either the
// series is zero (empty coefficient vector) or both end coefficients are
// nonzero. The zero series is representable for intermediate arithmetic;
// local rules reject it separately.
class LaurentPoly {
public:
    // Coefficients for indices lo, lo+1, ... Reduces mod m and trims.
    LaurentPoly(Modulus modulus, int lo, std::vector<Residue> coeffs);

    static LaurentPoly zero(Modulus modulus);
    static LaurentPoly one(Modulus modulus);
    // c * X^{-index}
    static LaurentPoly monomial(Modulus modulus, Residue c, int index);

    const Modulus& modulus() const { return modulus_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;

    // Support ends; meaningful only when nonzero.
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
    // hi - lo of a nonzero series.
    int width() const { return static_cast<int>(coeffs_.size()) - 1; }

    // Coefficient at an arbitrary index (0 outside the support).
    Residue coeff(int index) const;
    const std::vector<Residue>& coeffs() const { return coeffs_; }

    // Rendering in powers of X, e.g. "2*X^-1 + 2*X^-2 + X^-3".
    std::string to_string() const;

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    Modulus modulus_;
    int lo_ = 0;
    std::vector<Residue> coeffs_;
};

LaurentPoly fps_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly fps_mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly fps_pow(const LaurentPoly& f, unsigned n);

// Unit-coefficient census for one prime factor of the modulus.
struct PrimeUnitCount {
    std::uint64_t prime = 0;
    std::size_t unit_count = 0; // coefficients coprime to prime
    int unit_index = 0;         // meaningful only when unit_count == 1
};

struct InvertibilityVerdict {
    bool invertible = false;
    std::vector<PrimeUnitCount> per_prime; // factor order
};

// A nonzero series is invertible iff every prime factor of m sees exactly
// one coefficient coprime to it. Throws InvalidInput on the zero series.
InvertibilityVerdict fps_invertible(const LaurentPoly& f);

// Inverse over Z_{p^k} via the unit-plus-nilpotent split: with
// F = c X^{-j} + p H and Ht = -c^{-1} X^{j} H, the inverse is
// G = c^{-1} X^{j} (1 + (p Ht) + ... + (p Ht)^{k-1}), everything mod p^k.
// The product F*G is checked to be exactly 1 before returning.
LaurentPoly fps_invert_prime_power(const LaurentPoly& f);

// Inverse over general Z_m: coefficient-wise CRT split into prime-power
// components, invert each, recombine on the union of supports.
LaurentPoly fps_invert(const LaurentPoly& f);

} // namespace lca
