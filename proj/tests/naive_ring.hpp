#pragma once

// Brute-force reference for the series engine: dense nonnegative windows,
// no memoization, no valuation bookkeeping. Every product recursion steps
// the requested precision down by at least one, which is the whole
// termination argument; everything else is schoolbook.

#include <vector>

#include "skewforge/skew.hpp"

namespace naive {

using skewforge::Mobius;
using skewforge::Poly;
using skewforge::RatFunc;

struct Ring {
    uint32_t p;
    Mobius alpha;
    std::vector<RatFunc> conj; // conj[0] = alpha(t)

    static Ring of(const skewforge::SkewStructure& s) {
        return Ring{s.p(), s.alpha(), s.conj()};
    }

    using Vec = std::vector<RatFunc>; // coefficient of z^k at index k

    Vec zeros(int prec) const { return Vec(static_cast<size_t>(prec), RatFunc::zero(p)); }

    Vec constant(const RatFunc& f, int prec) const {
        Vec v = zeros(prec);
        if (prec > 0) v[0] = f;
        return v;
    }

    Vec phi_pow(long long m, const RatFunc& f, int prec) const {
        if (prec <= 0) return {};
        if (m == 0 || f.is_zero()) return constant(f, prec);
        if (m == 1) return phi1(f, prec);
        if (m > 1) {
            Vec x = phi_pow(m - 1, f, prec);
            Vec out = zeros(prec);
            for (int k = 0; k < prec; ++k) {
                Vec step = phi1(x[static_cast<size_t>(k)], prec - k);
                for (int r = 0; r + k < prec; ++r)
                    out[static_cast<size_t>(r + k)] =
                        out[static_cast<size_t>(r + k)] + step[static_cast<size_t>(r)];
            }
            return out;
        }
        if (m == -1) return phi_back(f, prec);
        Vec x = phi_pow(m + 1, f, prec);
        Vec out = zeros(prec);
        for (int k = 0; k < prec; ++k) {
            Vec step = phi_back(x[static_cast<size_t>(k)], prec - k);
            for (int r = 0; r + k < prec; ++r)
                out[static_cast<size_t>(r + k)] =
                    out[static_cast<size_t>(r + k)] + step[static_cast<size_t>(r)];
        }
        return out;
    }

    // Product of two nonnegative-valuation windows.
    Vec mul(const Vec& a, const Vec& b, int prec) const {
        Vec out = zeros(prec);
        for (int n = 0; n < prec; ++n) {
            RatFunc acc = RatFunc::zero(p);
            for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i) {
                if (a[static_cast<size_t>(i)].is_zero()) continue;
                for (int j = 0; j + i <= n && j < static_cast<int>(b.size()); ++j) {
                    if (b[static_cast<size_t>(j)].is_zero()) continue;
                    int k = n - i - j;
                    Vec tw = phi_pow(i, b[static_cast<size_t>(j)], k + 1);
                    acc = acc + a[static_cast<size_t>(i)] * tw[static_cast<size_t>(k)];
                }
            }
            out[static_cast<size_t>(n)] = acc;
        }
        return out;
    }

    Vec inv(const Vec& a, int prec) const {
        RatFunc g = a.at(0).inverse();
        Vec e = zeros(prec);
        for (int k = 1; k < prec && k < static_cast<int>(a.size()); ++k)
            e[static_cast<size_t>(k)] = -(g * a[static_cast<size_t>(k)]);
        Vec acc = constant(RatFunc::one(p), prec);
        Vec pw = e;
        for (int round = 0; round < prec; ++round) {
            for (int k = 0; k < prec; ++k)
                acc[static_cast<size_t>(k)] = acc[static_cast<size_t>(k)] + pw[static_cast<size_t>(k)];
            pw = mul(pw, e, prec);
        }
        return mul(acc, constant(g, prec), prec);
    }

    Vec eval_poly(const Poly& f, int prec) const {
        Vec c = zeros(prec);
        for (int k = 0; k < prec && k < static_cast<int>(conj.size()); ++k)
            c[static_cast<size_t>(k)] = conj[static_cast<size_t>(k)];
        Vec acc = constant(RatFunc::constant(p, f.coeff(f.degree())), prec);
        for (int k = f.degree() - 1; k >= 0; --k) {
            acc = mul(acc, c, prec);
            acc[0] = acc[0] + RatFunc::constant(p, f.coeff(k));
        }
        return acc;
    }

    Vec phi1(const RatFunc& f, int prec) const {
        if (prec <= 0) return {};
        if (f.is_constant()) return constant(alpha.apply(f), prec);
        Vec num = eval_poly(f.num(), prec);
        if (f.den().is_one()) return num;
        return mul(num, inv(eval_poly(f.den(), prec), prec), prec);
    }

    Vec phi_back(const RatFunc& f, int prec) const {
        Mobius ainv = alpha.inverse();
        Vec x = zeros(prec);
        x[0] = ainv.apply(f);
        for (int i = 1; i < prec; ++i) {
            RatFunc s = RatFunc::zero(p);
            for (int k = 0; k < i; ++k) {
                if (x[static_cast<size_t>(k)].is_zero()) continue;
                Vec step = phi1(x[static_cast<size_t>(k)], i - k + 1);
                s = s + step[static_cast<size_t>(i - k)];
            }
            x[static_cast<size_t>(i)] = ainv.apply(-s);
        }
        return x;
    }
};

} // namespace naive
