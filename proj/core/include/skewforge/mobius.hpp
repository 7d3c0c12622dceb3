#pragma once

#include <array>

#include "skewforge/ratfunc.hpp"

namespace skewforge {

// A finite-order automorphism of F_p(t), stored as the PGL_2(F_p) class of
// t |-> (a*t + b)/(c*t + d). The representative is normalized so that the
// first nonzero entry of (a, b, c, d) equals 1.
class Mobius {
public:
    Mobius(uint32_t p, long long a, long long b, long long c, long long d);

    static Mobius identity(uint32_t p) { return Mobius(p, 1, 0, 0, 1); }
    static Mobius scaling(uint32_t p, long long zeta) { return Mobius(p, zeta, 0, 0, 1); }

    uint32_t p() const { return p_; }
    const std::array<uint32_t, 4>& matrix() const { return m_; } // row-major a b c d

    bool is_identity() const;

    Mobius compose(const Mobius& o) const; // this after o, i.e. t -> this(o(t))
    Mobius inverse() const;
    Mobius pow(long long e) const;

    // Least n >= 1 with sigma^n = id in PGL_2(F_p).
    int order() const;

    RatFunc image_of_t() const;
    RatFunc apply(const RatFunc& f) const; // f(sigma(t))

    friend bool operator==(const Mobius& x, const Mobius& y) {
        return x.p_ == y.p_ && x.m_ == y.m_;
    }
    friend bool operator!=(const Mobius& x, const Mobius& y) { return !(x == y); }

private:
    void normalize();

    uint32_t p_;
    std::array<uint32_t, 4> m_;
};

} // namespace skewforge
