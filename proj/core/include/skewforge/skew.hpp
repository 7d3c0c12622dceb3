#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "json.hpp"
#include "skewforge/freering.hpp"
#include "skewforge/mobius.hpp"

namespace skewforge {

// Truncated Laurent series sum a_k z^k with an explicit knowledge window:
// coefficients are known exactly for k < known_to(), and below lead() they
// are known to be zero. A nonzero series keeps its first stored coefficient
// nonzero, so lead() is its valuation. A series with no nonzero known
// coefficient represents 0 + O(z^known_to()): zeroness is a statement up to
// that order only, never beyond.
class SkewSeries {
public:
    SkewSeries() : p_(2), lead_(0) {}

    static SkewSeries make(uint32_t p, long long lead, std::vector<RatFunc> coeffs);
    static SkewSeries zero_to(uint32_t p, long long order_bound);
    static SkewSeries constant(const RatFunc& f, int prec);
    static SkewSeries monomial(const RatFunc& c, long long k, int prec);

    uint32_t p() const { return p_; }
    bool is_zero() const { return coeffs_.empty(); } // zero to the known order
    long long val() const;                           // requires a nonzero series
    // First unknown order; coefficients are exact strictly below this.
    long long known_to() const { return lead_ + static_cast<long long>(coeffs_.size()); }
    int prec() const { return static_cast<int>(coeffs_.size()); }
    long long lead() const { return lead_; }

    // Zero below lead(), stored value inside the window, PrecisionExceeded at
    // or beyond known_to(). Truncation never silently fabricates zeros.
    RatFunc coeff(long long k) const;

    SkewSeries truncated(long long order_bound) const;
    SkewSeries shifted(long long d) const; // right-multiplication by z^d

    friend bool operator==(const SkewSeries& a, const SkewSeries& b) {
        return a.p_ == b.p_ && a.lead_ == b.lead_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const SkewSeries& a, const SkewSeries& b) { return !(a == b); }

    // Equal on the overlap of the two knowledge windows.
    static bool agree(const SkewSeries& a, const SkewSeries& b);

    std::string str() const;

private:
    uint32_t p_;
    long long lead_; // for a zero series this is the zeroness bound
    std::vector<RatFunc> coeffs_;
};

struct CheckEntry {
    std::string label;
    bool ok = false;
    RatFunc lhs;
    RatFunc rhs;
};

struct CheckResult {
    bool ok = true;
    std::vector<CheckEntry> entries;

    void push(std::string label, RatFunc lhs, RatFunc rhs);
};

// The presentation of the ring F_p(t)((z)): the conjugation series
// z t z^-1 = c_0 + c_1 z + ... with c_0 = alpha(t), truncated at `precision`
// coefficients. Everything else — conjugation of arbitrary rational
// functions, by arbitrary powers of z, and the full skew product — is derived
// from this series. Copies share the memo cache; the cache is mutex-guarded,
// so a structure may be used from several threads at once.
class SkewStructure {
public:
    SkewStructure(uint32_t p, Mobius alpha, std::vector<RatFunc> conj, int precision);

    uint32_t p() const { return core_->p; }
    const Mobius& alpha() const { return core_->alpha; }
    int precision() const { return core_->precision; }
    int alpha_order() const { return core_->alpha_order; }
    // delta_k(t) for 0 <= k < precision (slot 0 holds alpha(t)).
    const RatFunc& conj_coeff(int k) const;
    const std::vector<RatFunc>& conj() const { return core_->conj; }

    RatFunc t() const { return RatFunc::t(p()); }

    // z^m a z^-m to `prec` known coefficients.
    SkewSeries conj_pow(long long m, const RatFunc& a, int prec) const;

    // Coefficient of z^i in z^m a z^-m; zero when m = 0.
    RatFunc delta(long long m, int i, const RatFunc& a) const;

    SkewSeries lift(const RatFunc& f) const; // constant series at full precision
    SkewSeries z_pow(long long k) const;
    SkewSeries conj_series(int prec) const;

    SkewSeries add(const SkewSeries& a, const SkewSeries& b) const;
    SkewSeries sub(const SkewSeries& a, const SkewSeries& b) const;
    SkewSeries lmul(const RatFunc& c, const SkewSeries& a) const;
    SkewSeries mul(const SkewSeries& a, const SkewSeries& b) const;
    SkewSeries inv(const SkewSeries& a) const;

    // Apply z^m (.) z^-m coefficient-wise to a whole series.
    SkewSeries conj_pow_series(long long m, const SkewSeries& x) const;

    // Product rule for the maps m-delta-i, both the general twisted form and
    // (when alpha = id) the binomial form with the shifted-index convention.
    CheckResult check_product_rule(const RatFunc& a, const RatFunc& b, long long m, int i) const;

    // Composition laws relating m-step maps to 1-step maps, and the
    // vanishing of the mixed forward/backward sum.
    CheckResult check_conj_tower(const RatFunc& a, long long m, int i) const;

    // The sigma/S-polynomial expansion of delta_i(a*b) against the direct
    // engine value.
    CheckResult check_sigma_expansion(const RatFunc& a, const RatFunc& b, int i) const;

    Interpretation interpretation() const;

    nlohmann::json to_json() const;
    static SkewStructure from_json(const nlohmann::json& j);

private:
    struct Core {
        uint32_t p;
        Mobius alpha;
        std::vector<RatFunc> conj;
        int precision;
        int alpha_order;
    };
    struct Cache {
        std::mutex mu;
        std::map<std::pair<long long, RatFunc>, SkewSeries> phi;
    };

    SkewSeries conj_pow_uncached(long long m, const RatFunc& a, int prec) const;
    SkewSeries phi_once(const RatFunc& a, int prec) const;     // m = +1
    SkewSeries phi_inv_once(const RatFunc& a, int prec) const; // m = -1
    SkewSeries eval_poly_at_conj(const Poly& f, int prec) const;
    RatFunc delta_unchecked(long long m, int i, const RatFunc& a) const;

    std::shared_ptr<const Core> core_;
    std::shared_ptr<Cache> cache_;
};

} // namespace skewforge
