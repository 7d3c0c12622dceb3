#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewforge/fp.hpp"

namespace skewforge {

// Dense univariate polynomial over F_p, ascending coefficients, no trailing
// zeros. The zero polynomial has an empty coefficient vector.
class Poly {
public:
    Poly() : p_(2) {} // zero over F_2; a placeholder value
    explicit Poly(uint32_t p) : p_(p) {}
    Poly(uint32_t p, std::vector<uint32_t> coeffs);

    static Poly zero(uint32_t p) { return Poly(p); }
    static Poly constant(uint32_t p, long long v);
    static Poly t(uint32_t p) { return Poly(p, {0, 1}); }
    static Poly monomial(uint32_t p, int deg, long long v);

    uint32_t p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    uint32_t coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)] : 0u;
    }
    uint32_t leading() const { return c_.empty() ? 0u : c_.back(); }
    const std::vector<uint32_t>& coeffs() const { return c_; }

    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }

    Poly monic() const;
    Poly derivative() const;
    uint32_t eval(uint32_t x) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scaled(uint32_t s) const;

    // Quotient and remainder by an arbitrary nonzero divisor.
    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
    friend Poly operator%(const Poly& a, const Poly& b);
    friend Poly operator/(const Poly& a, const Poly& b);

    static Poly gcd(Poly a, Poly b); // monic

    // Substitute another polynomial for t.
    Poly compose(const Poly& g) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.p_ != b.p_) return a.p_ < b.p_;
        return a.c_ < b.c_;
    }

    // Descending-degree form in the file grammar, e.g. "2*t^3+t+2"; "0" when zero.
    std::string str() const;

private:
    void trim();
    void check_same(const Poly& o) const;

    uint32_t p_;
    std::vector<uint32_t> c_;
};

} // namespace skewforge
