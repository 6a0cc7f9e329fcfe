#pragma once

#include <vector>

#include "lca/fps.hpp"
#include "lca/modular.hpp"

namespace lca {

// Linear local rule f(x_l, ..., x_r) = sum_i c_i x_i mod m.
// At least one coefficient must be nonzero mod m; the declared window is kept
// as given (end coefficients of a hand-built rule may be zero).
class LocalRule {
public:
    LocalRule(Modulus modulus, int left, std::vector<Residue> coeffs);

    static LocalRule identity(Modulus modulus); // f(x_0) = x_0

    const Modulus& modulus() const { return modulus_; }
    int left() const { return left_; }
    int right() const { return left_ + static_cast<int>(coeffs_.size()) - 1; }
    int width() const { return static_cast<int>(coeffs_.size()); }

    Residue coeff(int index) const;
    const std::vector<Residue>& coeffs() const { return coeffs_; }

    bool is_identity() const;

    friend bool operator==(const LocalRule&, const LocalRule&) = default;

private:
    Modulus modulus_;
    int left_ = 0;
    std::vector<Residue> coeffs_;
};

struct PermutativityClass {
    bool left = false;
    bool right = false;

    bool bipermutative() const { return left && right; }
    bool neither() const { return !left && !right; }
};

// Index i of the rule coefficient maps to the X^{-i} term.
LaurentPoly rule_to_fps(const LocalRule& rule);
// Trimmed rule of a nonzero series. Throws InvalidInput on the zero series.
LocalRule fps_to_rule(const LaurentPoly& f);

// gcd tests on the declared end coefficients.
PermutativityClass permutativity(const LocalRule& rule);

InvertibilityVerdict invertibility(const LocalRule& rule);
bool is_invertible(const LocalRule& rule);

// Inverse local rule via series inversion. For a one-sided permutative rule
// over a prime power the structural shape of the result is checked: the unit
// end lands at the negated end index with the inverted coefficient, and every
// other coefficient is divisible by p.
LocalRule inverse_rule(const LocalRule& rule);

// Composition of the two CA maps; for linear rules this is the product of
// their series (and is therefore commutative).
LocalRule compose(const LocalRule& outer, const LocalRule& inner);

// n-th iterate, n >= 1. The trimmed window is contained in [n*l, n*r].
LocalRule iterate_rule(const LocalRule& rule, unsigned n);

} // namespace lca
