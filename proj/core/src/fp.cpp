#include "skewforge/fp.hpp"

namespace skewforge {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint32_t fp_pow(uint32_t a, uint64_t e, uint32_t p) {
    uint32_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = fp_mul(r, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

uint32_t fp_inv(uint32_t a, uint32_t p) {
    a %= p;
    if (a == 0) throw DivisionByZero("inverse of 0 mod " + std::to_string(p));
    return fp_pow(a, p - 2, p);
}

static uint32_t binom_small(uint32_t n, uint32_t k, uint32_t p) {
    // n, k < p
    if (k > n) return 0;
    uint32_t num = 1, den = 1;
    for (uint32_t r = 0; r < k; ++r) {
        num = fp_mul(num, n - r, p);
        den = fp_mul(den, r + 1, p);
    }
    return fp_mul(num, fp_inv(den, p), p);
}

uint32_t binom_mod(uint64_t n, uint64_t k, uint32_t p) {
    uint32_t r = 1;
    while (n || k) {
        uint32_t nd = static_cast<uint32_t>(n % p);
        uint32_t kd = static_cast<uint32_t>(k % p);
        r = fp_mul(r, binom_small(nd, kd, p), p);
        if (r == 0) return 0;
        n /= p;
        k /= p;
    }
    return r;
}

uint32_t binom_shifted(long long j, long long l, long long k, uint32_t p) {
    if (l < 0) return 0;
    if (j > 0) return binom_mod(static_cast<uint64_t>(j), static_cast<uint64_t>(l), p);
    if (j == 0) return 0;
    long long lift = j;
    long long pq = 1;
    while (lift <= k) {
        pq *= p;
        lift = j + pq;
    }
    return binom_mod(static_cast<uint64_t>(lift), static_cast<uint64_t>(l), p);
}

} // namespace skewforge
