#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lca/measure.hpp"

namespace lca::detail {

// base^exp, or nullopt as soon as the value would exceed limit.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                                std::uint64_t limit) {
    std::uint64_t acc = 1;
    for (std::uint64_t t = 0; t < exp; ++t) {
        if (acc > limit / base)
            return std::nullopt;
        acc *= base;
    }
    return acc;
}

// base^exp <= limit enforced; throws GuardExceeded otherwise.
std::uint64_t guarded_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t limit,
                          const char* what);

// Mixed-radix word index; the lowest position is the most significant digit,
// so numeric order of indices is lexicographic order of words.
inline std::uint64_t encode_word(const Residue* digits, std::size_t width,
                                 std::uint64_t m) {
    std::uint64_t idx = 0;
    for (std::size_t t = 0; t < width; ++t)
        idx = idx * m + digits[t];
    return idx;
}

inline void decode_word(std::uint64_t idx, Residue* digits, std::size_t width,
                        std::uint64_t m) {
    for (std::size_t t = width; t-- > 0;) {
        digits[t] = idx % m;
        idx /= m;
    }
}

// Odometer step in lexicographic order; digits must hold width entries < m.
inline void increment_word(Residue* digits, std::size_t width, std::uint64_t m) {
    for (std::size_t t = width; t-- > 0;) {
        if (++digits[t] < m)
            return;
        digits[t] = 0;
    }
}

void check_cylinder(const Cylinder& c, std::uint64_t m);

// mu(A and U) for a cylinder A and a union U of cylinders on one window.
Rational intersect_measure(const Cylinder& a, const CylinderUnion& u,
                           const BernoulliVector& mu, const EnumOptions& opts);

bool use_parallel(const EnumOptions& opts, std::uint64_t work);

} // namespace lca::detail
