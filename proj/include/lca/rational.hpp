#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "lca/errors.hpp"

namespace lca {

// Exact rational, canonical (gcd 1, positive denominator). Thin value wrapper
// over GMP's mpq so every measure-side quantity stays exact.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(std::uint64_t num, std::uint64_t den)
        : value_(mpz_class(static_cast<unsigned long>(num)),
                 mpz_class(static_cast<unsigned long>(den))) {
        if (den == 0)
            throw InvalidInput("rational with zero denominator");
        value_.canonicalize();
    }
    Rational(mpz_class num, mpz_class den) : value_(std::move(num), std::move(den)) {
        if (value_.get_den() == 0)
            throw InvalidInput("rational with zero denominator");
        value_.canonicalize();
    }
    static Rational from_uint(std::uint64_t n) { return Rational(n, 1); }

    // 1 / base^exp
    static Rational uniform_power(std::uint64_t base, unsigned exp) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(base), exp);
        return Rational(mpz_class(1), std::move(den));
    }

    Rational& operator+=(const Rational& o) {
        value_ += o.value_;
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        value_ -= o.value_;
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        value_ *= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.value_ == b.value_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.value_ < b.value_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return a.value_ <= b.value_;
    }

    bool is_zero() const { return value_ == 0; }

    // Always "num/den", e.g. "1/1024", "0/1", "3/2".
    std::string str() const {
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }
    std::string num_str() const { return value_.get_num().get_str(); }
    std::string den_str() const { return value_.get_den().get_str(); }

private:
    mpq_class value_;
};

inline Rational abs_diff(const Rational& a, const Rational& b) {
    return a < b ? b - a : a - b;
}

} // namespace lca
