#pragma once

#include <string>

#include "skewforge/poly.hpp"

namespace skewforge {

// Canonical-form rational function num/den over F_p: den monic and nonzero,
// gcd(num, den) = 1, zero represented as 0/1. Values are immutable after
// construction; equality is structural.
class RatFunc {
public:
    // Degrees past this bound abort the computation instead of letting deep
    // series recursions blow up silently.
    static constexpr int kDegreeLimit = 4096;

    RatFunc() : RatFunc(2u) {} // zero over F_2; a placeholder value
    explicit RatFunc(uint32_t p) : num_(Poly::zero(p)), den_(Poly::constant(p, 1)) {}
    RatFunc(Poly num, Poly den);

    static RatFunc zero(uint32_t p) { return RatFunc(p); }
    static RatFunc one(uint32_t p) { return RatFunc(Poly::constant(p, 1), Poly::constant(p, 1)); }
    static RatFunc t(uint32_t p) { return RatFunc(Poly::t(p), Poly::constant(p, 1)); }
    static RatFunc constant(uint32_t p, long long v) {
        return RatFunc(Poly::constant(p, v), Poly::constant(p, 1));
    }
    static RatFunc from_poly(Poly f) {
        uint32_t p = f.p();
        return RatFunc(std::move(f), Poly::constant(p, 1));
    }

    uint32_t p() const { return num_.p(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc operator-() const;
    RatFunc inverse() const;
    RatFunc scaled(long long s) const;
    RatFunc pow(long long e) const;

    // Formal d/dt by the quotient rule.
    RatFunc derive() const;

    // Substitute g for t.
    RatFunc substitute(const RatFunc& g) const;

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
    friend bool operator<(const RatFunc& a, const RatFunc& b) {
        if (a.num_ != b.num_) return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    std::string str() const;

    // Text grammar:
    //   ratfunc := poly | "(" poly ")" "/" "(" poly ")"
    //   poly    := term (("+"|"-") term)*
    //   term    := nat | nat "*t" ("^" nat)? | "t" ("^" nat)?
    // Whitespace is ignored; coefficients are reduced mod p.
    static RatFunc parse(const std::string& text, uint32_t p);

private:
    void normalize();

    Poly num_, den_;
};

// Evaluate a polynomial over F_p at a rational-function argument.
RatFunc poly_at(const Poly& f, const RatFunc& x);

} // namespace skewforge
