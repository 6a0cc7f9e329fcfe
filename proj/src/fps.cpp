#include "lca/fps.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace lca {

namespace {

constexpr std::size_t kMaxSupport = std::size_t{1} << 16;

void check_same_modulus(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.modulus().m != b.modulus().m)
        throw InvalidInput("modulus mismatch: " + std::to_string(a.modulus().m) +
                           " vs " + std::to_string(b.modulus().m));
}

} // namespace

LaurentPoly::LaurentPoly(Modulus modulus, int lo, std::vector<Residue> coeffs)
    : modulus_(std::move(modulus)), lo_(lo), coeffs_(std::move(coeffs)) {
    if (modulus_.m < 2)
        throw InvalidInput("LaurentPoly: invalid modulus");
    if (coeffs_.size() > kMaxSupport)
        throw InvalidInput("LaurentPoly: support too wide");
    for (auto& c : coeffs_)
        c %= modulus_.m;
    // trim to canonical form
    std::size_t head = 0;
    while (head < coeffs_.size() && coeffs_[head] == 0)
        ++head;
    if (head == coeffs_.size()) {
        coeffs_.clear();
        lo_ = 0;
        return;
    }
    std::size_t tail = coeffs_.size();
    while (coeffs_[tail - 1] == 0)
        --tail;
    coeffs_ = std::vector<Residue>(coeffs_.begin() + static_cast<std::ptrdiff_t>(head),
                                   coeffs_.begin() + static_cast<std::ptrdiff_t>(tail));
    lo_ += static_cast<int>(head);
}

LaurentPoly LaurentPoly::zero(Modulus modulus) {
    return LaurentPoly(std::move(modulus), 0, {});
}

LaurentPoly LaurentPoly::one(Modulus modulus) {
    return LaurentPoly(std::move(modulus), 0, {1});
}

LaurentPoly LaurentPoly::monomial(Modulus modulus, Residue c, int index) {
    return LaurentPoly(std::move(modulus), index, {c});
}

bool LaurentPoly::is_one() const {
    return coeffs_.size() == 1 && lo_ == 0 && coeffs_[0] == 1;
}

Residue LaurentPoly::coeff(int index) const {
    if (is_zero() || index < lo_ || index > hi())
        return 0;
    return coeffs_[static_cast<std::size_t>(index - lo_)];
}

std::string LaurentPoly::to_string() const {
    if (is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = lo_; i <= hi(); ++i) {
        const Residue c = coeff(i);
        if (c == 0)
            continue;
        if (!first)
            out << " + ";
        first = false;
        const int exponent = -i; // X^{-i}
        if (exponent == 0) {
            out << c;
        } else {
            if (c != 1)
                out << c << "*";
            out << "X^" << exponent;
        }
    }
    return out.str();
}

LaurentPoly fps_add(const LaurentPoly& a, const LaurentPoly& b) {
    check_same_modulus(a, b);
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    const int lo = std::min(a.lo(), b.lo());
    const int hi = std::max(a.hi(), b.hi());
    std::vector<Residue> out(static_cast<std::size_t>(hi - lo + 1), 0);
    for (int i = lo; i <= hi; ++i)
        out[static_cast<std::size_t>(i - lo)] =
            add_mod(a.coeff(i), b.coeff(i), a.modulus().m);
    return LaurentPoly(a.modulus(), lo, std::move(out));
}

LaurentPoly fps_mul(const LaurentPoly& a, const LaurentPoly& b) {
    check_same_modulus(a, b);
    if (a.is_zero() || b.is_zero())
        return LaurentPoly::zero(a.modulus());
    const std::uint64_t m = a.modulus().m;
    std::vector<Residue> out(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const Residue ai = a.coeffs()[i];
        if (ai == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            Residue& slot = out[i + j];
            slot = (slot + ai * b.coeffs()[j]) % m;
        }
    }
    return LaurentPoly(a.modulus(), a.lo() + b.lo(), std::move(out));
}

LaurentPoly fps_pow(const LaurentPoly& f, unsigned n) {
    LaurentPoly acc = LaurentPoly::one(f.modulus());
    LaurentPoly base = f;
    while (n > 0) {
        if (n & 1u)
            acc = fps_mul(acc, base);
        n >>= 1u;
        if (n > 0)
            base = fps_mul(base, base);
    }
    return acc;
}

InvertibilityVerdict fps_invertible(const LaurentPoly& f) {
    if (f.is_zero())
        throw InvalidInput("zero series does not define a rule");
    InvertibilityVerdict verdict;
    verdict.invertible = true;
    for (const auto& pp : f.modulus().factors) {
        PrimeUnitCount row;
        row.prime = pp.prime;
        for (int i = f.lo(); i <= f.hi(); ++i) {
            if (f.coeff(i) % pp.prime != 0) {
                if (row.unit_count == 0)
                    row.unit_index = i;
                row.unit_count += 1;
            }
        }
        if (row.unit_count != 1)
            verdict.invertible = false;
        verdict.per_prime.push_back(row);
    }
    return verdict;
}

LaurentPoly fps_invert_prime_power(const LaurentPoly& f) {
    const Modulus& modulus = f.modulus();
    if (!modulus.is_prime_power())
        throw InvalidInput("fps_invert_prime_power: modulus " +
                           std::to_string(modulus.m) + " is not a prime power");
    const auto verdict = fps_invertible(f);
    if (!verdict.invertible)
        throw NotInvertible("series over Z_" + std::to_string(modulus.m) +
                            " has no unique unit coefficient");

    const std::uint64_t p = modulus.factors[0].prime;
    const unsigned k = modulus.factors[0].exponent;
    const std::uint64_t m = modulus.m;
    const int j = verdict.per_prime[0].unit_index;
    // The unit inverse is taken mod p^k, not just mod p: that is what makes
    // the product F*G land exactly on 1.
    const Residue unit_inv = inv_mod(f.coeff(j), m);

    // F = c X^{-j} + p H  with integral H
    std::vector<Residue> h(f.coeffs().size(), 0);
    for (int i = f.lo(); i <= f.hi(); ++i) {
        if (i == j)
            continue;
        const Residue c = f.coeff(i);
        assert(c % p == 0);
        h[static_cast<std::size_t>(i - f.lo())] = c / p;
    }
    const LaurentPoly series_h(modulus, f.lo(), std::move(h));

    // Ht = -c^{-1} X^{j} H; (p Ht) is nilpotent of order <= k.
    const LaurentPoly ht =
        fps_mul(LaurentPoly::monomial(modulus, neg_mod(unit_inv, m), -j), series_h);
    LaurentPoly p_ht = ht;
    {
        std::vector<Residue> scaled = ht.coeffs();
        for (auto& c : scaled)
            c = mul_mod(c, p % m, m);
        p_ht = LaurentPoly(modulus, ht.is_zero() ? 0 : ht.lo(), std::move(scaled));
    }

    LaurentPoly geometric = LaurentPoly::one(modulus);
    LaurentPoly term = LaurentPoly::one(modulus);
    for (unsigned t = 1; t < k; ++t) {
        term = fps_mul(term, p_ht);
        geometric = fps_add(geometric, term);
    }
    LaurentPoly inverse =
        fps_mul(LaurentPoly::monomial(modulus, unit_inv, -j), geometric);

    if (!fps_mul(f, inverse).is_one())
        throw std::logic_error("fps_invert_prime_power: F*G != 1");
    return inverse;
}

LaurentPoly fps_invert(const LaurentPoly& f) {
    const Modulus& modulus = f.modulus();
    const auto verdict = fps_invertible(f);
    if (!verdict.invertible)
        throw NotInvertible("series over Z_" + std::to_string(modulus.m) +
                            " is not invertible");
    if (modulus.is_prime_power())
        return fps_invert_prime_power(f);

    // Invert each prime-power component, then recombine coefficients by CRT
    // on the union of the supports (absent coefficients count as zero).
    std::vector<LaurentPoly> parts;
    parts.reserve(modulus.factors.size());
    for (const auto& pp : modulus.factors) {
        std::vector<Residue> reduced = f.coeffs();
        for (auto& c : reduced)
            c %= pp.value;
        parts.push_back(fps_invert_prime_power(
            LaurentPoly(prime_power_modulus(pp), f.lo(), std::move(reduced))));
    }

    int lo = parts[0].lo(), hi = parts[0].hi();
    for (const auto& part : parts) {
        lo = std::min(lo, part.lo());
        hi = std::max(hi, part.hi());
    }
    std::vector<Residue> combined(static_cast<std::size_t>(hi - lo + 1), 0);
    std::vector<Residue> slots(parts.size());
    for (int i = lo; i <= hi; ++i) {
        for (std::size_t u = 0; u < parts.size(); ++u)
            slots[u] = parts[u].coeff(i);
        combined[static_cast<std::size_t>(i - lo)] = crt_combine(slots, modulus);
    }
    LaurentPoly inverse(modulus, lo, std::move(combined));

    if (!fps_mul(f, inverse).is_one())
        throw std::logic_error("fps_invert: F*G != 1");
    return inverse;
}

} // namespace lca
