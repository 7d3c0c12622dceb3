#pragma once

#include <cstdint>

#include "skewforge/errors.hpp"

namespace skewforge {

bool is_prime(uint32_t n);

// Residues are kept in [0, p). All helpers assume p prime and p < 2^16 in
// the sense that products fit 64 bits comfortably (p is validated small at
// structure construction).
inline uint32_t fp_add(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}

inline uint32_t fp_sub(uint32_t a, uint32_t b, uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

inline uint32_t fp_neg(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }

inline uint32_t fp_mul(uint32_t a, uint32_t b, uint32_t p) {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
}

uint32_t fp_pow(uint32_t a, uint64_t e, uint32_t p);
uint32_t fp_inv(uint32_t a, uint32_t p);

// Reduce an arbitrary signed integer mod p.
inline uint32_t fp_of(long long x, uint32_t p) {
    long long r = x % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
}

// Binomial coefficient mod p via Lucas.
uint32_t binom_mod(uint64_t n, uint64_t k, uint32_t p);

// Binomial C(j, l) mod p with the shifted-index convention used by the
// identity checks: j > 0 plain, j == 0 gives 0, j < 0 is lifted to j + p^q
// with q minimal such that j + p^q > k >= 0.
uint32_t binom_shifted(long long j, long long l, long long k, uint32_t p);

// A single residue with its modulus attached; used where a bare value would
// lose track of which field it lives in.
struct FpElem {
    uint32_t value = 0;
    uint32_t p = 2;

    FpElem() = default;
    FpElem(long long v, uint32_t prime) : value(fp_of(v, prime)), p(prime) {
        if (!is_prime(prime)) throw BadModulus("p = " + std::to_string(prime) + " is not prime");
    }

    friend bool operator==(const FpElem& a, const FpElem& b) {
        return a.p == b.p && a.value == b.value;
    }
};

} // namespace skewforge
