#include "lca/rule.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace lca {

namespace {
constexpr std::size_t kMaxWidth = std::size_t{1} << 16;
}

LocalRule::LocalRule(Modulus modulus, int left, std::vector<Residue> coeffs)
    : modulus_(std::move(modulus)), left_(left), coeffs_(std::move(coeffs)) {
    if (modulus_.m < 2)
        throw InvalidInput("LocalRule: invalid modulus");
    if (coeffs_.empty())
        throw InvalidInput("LocalRule: empty coefficient list");
    if (coeffs_.size() > kMaxWidth)
        throw InvalidInput("LocalRule: window too wide");
    bool any = false;
    for (auto& c : coeffs_) {
        c %= modulus_.m;
        any = any || c != 0;
    }
    if (!any)
        throw InvalidInput("LocalRule: all coefficients are zero mod " +
                           std::to_string(modulus_.m));
}

LocalRule LocalRule::identity(Modulus modulus) {
    return LocalRule(std::move(modulus), 0, {1});
}

Residue LocalRule::coeff(int index) const {
    if (index < left() || index > right())
        return 0;
    return coeffs_[static_cast<std::size_t>(index - left_)];
}

bool LocalRule::is_identity() const {
    return left_ == 0 && coeffs_.size() == 1 && coeffs_[0] == 1;
}

LaurentPoly rule_to_fps(const LocalRule& rule) {
    return LaurentPoly(rule.modulus(), rule.left(), rule.coeffs());
}

LocalRule fps_to_rule(const LaurentPoly& f) {
    if (f.is_zero())
        throw InvalidInput("zero series does not define a rule");
    return LocalRule(f.modulus(), f.lo(), f.coeffs());
}

PermutativityClass permutativity(const LocalRule& rule) {
    const std::uint64_t m = rule.modulus().m;
    return PermutativityClass{
        std::gcd(rule.coeffs().front(), m) == 1,
        std::gcd(rule.coeffs().back(), m) == 1,
    };
}

InvertibilityVerdict invertibility(const LocalRule& rule) {
    return fps_invertible(rule_to_fps(rule));
}

bool is_invertible(const LocalRule& rule) {
    return invertibility(rule).invertible;
}

LocalRule inverse_rule(const LocalRule& rule) {
    const LocalRule inverse = fps_to_rule(fps_invert(rule_to_fps(rule)));

    // Structural cross-check against the closed-form shape of the inverse of
    // a one-sided permutative rule over Z_{p^k}.
    const Modulus& modulus = rule.modulus();
    if (modulus.is_prime_power() && rule.width() > 1) {
        const std::uint64_t p = modulus.factors[0].prime;
        const auto cls = permutativity(rule);
        int unit_end = 0;
        if (cls.right && !cls.left)
            unit_end = rule.right();
        else if (cls.left && !cls.right)
            unit_end = rule.left();
        else
            return inverse;
        const int mirrored = -unit_end;
        if (inverse.coeff(mirrored) != inv_mod(rule.coeff(unit_end), modulus.m))
            throw std::logic_error("inverse_rule: unit end coefficient mismatch");
        if (mirrored != (unit_end == rule.right() ? inverse.right() : inverse.left()))
            throw std::logic_error("inverse_rule: unit end index mismatch");
        for (int i = inverse.left(); i <= inverse.right(); ++i)
            if (i != mirrored && inverse.coeff(i) % p != 0)
                throw std::logic_error("inverse_rule: off-end coefficient not divisible by p");
    }
    return inverse;
}

LocalRule compose(const LocalRule& outer, const LocalRule& inner) {
    if (outer.modulus().m != inner.modulus().m)
        throw InvalidInput("compose: modulus mismatch");
    return fps_to_rule(fps_mul(rule_to_fps(outer), rule_to_fps(inner)));
}

LocalRule iterate_rule(const LocalRule& rule, unsigned n) {
    if (n < 1)
        throw InvalidInput("iterate_rule: n must be >= 1");
    return fps_to_rule(fps_pow(rule_to_fps(rule), n));
}

} // namespace lca
