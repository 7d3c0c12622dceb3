#include "skewforge/skew.hpp"

#include <algorithm>

namespace skewforge {

// ---------------------------------------------------------------------------
// SkewSeries

SkewSeries SkewSeries::make(uint32_t p, long long lead, std::vector<RatFunc> coeffs) {
    long long known = lead + static_cast<long long>(coeffs.size());
    size_t skip = 0;
    while (skip < coeffs.size() && coeffs[skip].is_zero()) ++skip;
    SkewSeries s;
    s.p_ = p;
    if (skip == coeffs.size()) {
        s.lead_ = known;
        return s;
    }
    s.lead_ = lead + static_cast<long long>(skip);
    s.coeffs_.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(skip), coeffs.end());
    return s;
}

SkewSeries SkewSeries::zero_to(uint32_t p, long long order_bound) {
    SkewSeries s;
    s.p_ = p;
    s.lead_ = order_bound;
    return s;
}

SkewSeries SkewSeries::constant(const RatFunc& f, int prec) {
    if (prec <= 0) throw EmptyPrecision("constant series with no known coefficients");
    if (f.is_zero()) return zero_to(f.p(), prec);
    std::vector<RatFunc> c(static_cast<size_t>(prec), RatFunc::zero(f.p()));
    c[0] = f;
    return make(f.p(), 0, std::move(c));
}

SkewSeries SkewSeries::monomial(const RatFunc& c, long long k, int prec) {
    return constant(c, prec).shifted(k);
}

long long SkewSeries::val() const {
    if (is_zero()) throw Error("valuation of a series that is zero to known order");
    return lead_;
}

RatFunc SkewSeries::coeff(long long k) const {
    if (k < lead_) return RatFunc::zero(p_);
    if (k >= known_to())
        throw PrecisionExceeded("coefficient of z^" + std::to_string(k) +
                                " requested, series known to O(z^" + std::to_string(known_to()) + ")");
    return coeffs_[static_cast<size_t>(k - lead_)];
}

SkewSeries SkewSeries::truncated(long long order_bound) const {
    if (order_bound >= known_to()) return *this;
    if (is_zero() || order_bound <= lead_) return zero_to(p_, order_bound);
    std::vector<RatFunc> c(coeffs_.begin(),
                           coeffs_.begin() + static_cast<std::ptrdiff_t>(order_bound - lead_));
    return make(p_, lead_, std::move(c));
}

SkewSeries SkewSeries::shifted(long long d) const {
    SkewSeries s = *this;
    s.lead_ += d;
    return s;
}

bool SkewSeries::agree(const SkewSeries& a, const SkewSeries& b) {
    long long bound = std::min(a.known_to(), b.known_to());
    long long lo = std::min(a.lead_, b.lead_);
    for (long long k = lo; k < bound; ++k)
        if (a.coeff(k) != b.coeff(k)) return false;
    return true;
}

std::string SkewSeries::str() const {
    std::string out;
    for (long long k = lead_; k < known_to(); ++k) {
        const RatFunc& c = coeffs_[static_cast<size_t>(k - lead_)];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")*z^" + std::to_string(k);
    }
    if (!out.empty()) out += " + ";
    out += "O(z^" + std::to_string(known_to()) + ")";
    return out;
}

void CheckResult::push(std::string label, RatFunc lhs, RatFunc rhs) {
    bool equal = lhs == rhs;
    ok = ok && equal;
    entries.push_back(CheckEntry{std::move(label), equal, std::move(lhs), std::move(rhs)});
}

// ---------------------------------------------------------------------------
// SkewStructure

SkewStructure::SkewStructure(uint32_t p, Mobius alpha, std::vector<RatFunc> conj, int precision) {
    if (!is_prime(p)) throw BadModulus("p = " + std::to_string(p) + " is not prime");
    if (alpha.p() != p) throw InconsistentStructure("automorphism lives over a different prime");
    if (precision < 2) throw InconsistentStructure("precision must be at least 2");
    if (conj.empty()) throw InconsistentStructure("empty conjugation series");
    if (static_cast<int>(conj.size()) > precision)
        throw InconsistentStructure("conjugation series longer than the precision");
    for (const auto& c : conj)
        if (c.p() != p) throw InconsistentStructure("conjugation coefficient over a different prime");
    if (conj[0] != alpha.image_of_t())
        throw InconsistentStructure("leading conjugation coefficient must equal alpha(t), got " +
                                    conj[0].str());
    conj.resize(static_cast<size_t>(precision), RatFunc::zero(p));
    auto core = std::make_shared<Core>(Core{p, alpha, std::move(conj), precision, alpha.order()});
    core_ = std::move(core);
    cache_ = std::make_shared<Cache>();
}

const RatFunc& SkewStructure::conj_coeff(int k) const {
    if (k < 0 || k >= precision())
        throw PrecisionExceeded("conjugation coefficient " + std::to_string(k) + " out of range");
    return core_->conj[static_cast<size_t>(k)];
}

SkewSeries SkewStructure::conj_series(int prec) const {
    int P = std::min(prec, precision());
    if (P <= 0) throw EmptyPrecision("conjugation series with no known coefficients");
    std::vector<RatFunc> c(core_->conj.begin(), core_->conj.begin() + P);
    return SkewSeries::make(p(), 0, std::move(c));
}

SkewSeries SkewStructure::lift(const RatFunc& f) const {
    return SkewSeries::constant(f, precision());
}

SkewSeries SkewStructure::z_pow(long long k) const {
    return SkewSeries::monomial(RatFunc::one(p()), k, precision());
}

SkewSeries SkewStructure::add(const SkewSeries& a, const SkewSeries& b) const {
    long long bound = std::min(a.known_to(), b.known_to());
    long long lo = std::min(a.lead(), b.lead());
    lo = std::min(lo, bound);
    std::vector<RatFunc> out;
    out.reserve(static_cast<size_t>(bound - lo));
    for (long long k = lo; k < bound; ++k) out.push_back(a.coeff(k) + b.coeff(k));
    return SkewSeries::make(p(), lo, std::move(out));
}

SkewSeries SkewStructure::sub(const SkewSeries& a, const SkewSeries& b) const {
    long long bound = std::min(a.known_to(), b.known_to());
    long long lo = std::min(a.lead(), b.lead());
    lo = std::min(lo, bound);
    std::vector<RatFunc> out;
    out.reserve(static_cast<size_t>(bound - lo));
    for (long long k = lo; k < bound; ++k) out.push_back(a.coeff(k) - b.coeff(k));
    return SkewSeries::make(p(), lo, std::move(out));
}

SkewSeries SkewStructure::lmul(const RatFunc& c, const SkewSeries& a) const {
    if (c.is_zero() || a.is_zero()) return SkewSeries::zero_to(p(), a.known_to());
    std::vector<RatFunc> out;
    out.reserve(static_cast<size_t>(a.known_to() - a.lead()));
    for (long long k = a.lead(); k < a.known_to(); ++k) out.push_back(c * a.coeff(k));
    return SkewSeries::make(p(), a.lead(), std::move(out));
}

SkewSeries SkewStructure::mul(const SkewSeries& a, const SkewSeries& b) const {
    const int N = precision();
    long long ea = a.is_zero() ? a.known_to() : a.val();
    long long eb = b.is_zero() ? b.known_to() : b.val();
    if (a.is_zero() || b.is_zero()) return SkewSeries::zero_to(p(), ea + eb);

    long long bound = std::min({a.known_to() + eb, ea + b.known_to(), ea + eb + N});
    std::vector<RatFunc> out(static_cast<size_t>(bound - ea - eb), RatFunc::zero(p()));
    for (long long i = ea; i < a.known_to(); ++i) {
        RatFunc ai = a.coeff(i);
        if (ai.is_zero()) continue;
        for (long long j = eb; j < b.known_to(); ++j) {
            RatFunc bj = b.coeff(j);
            if (bj.is_zero()) continue;
            long long need = bound - i - j;
            if (need <= 0) continue;
            SkewSeries tw = conj_pow(i, bj, static_cast<int>(need));
            for (long long k = std::max<long long>(0, tw.lead()); k < tw.known_to(); ++k) {
                RatFunc v = tw.coeff(k);
                if (v.is_zero()) continue;
                size_t idx = static_cast<size_t>(i + j + k - ea - eb);
                if (idx >= out.size()) break;
                out[idx] = out[idx] + ai * v;
            }
        }
    }
    return SkewSeries::make(p(), ea + eb, std::move(out));
}

SkewSeries SkewStructure::inv(const SkewSeries& a) const {
    if (a.is_zero()) throw DivisionByZero("series inverse of a series that is zero to known order");
    long long v = a.val();
    SkewSeries a0 = a.shifted(-v); // valuation 0
    int P = a0.prec();
    RatFunc lead_inv = a0.coeff(0).inverse();

    // a0 = u(a0_0) * (1 - E) with val(E) >= 1, so a0^-1 = (sum E^k) * u(1/a0_0).
    SkewSeries one = SkewSeries::constant(RatFunc::one(p()), P);
    SkewSeries e = sub(one, lmul(lead_inv, a0));
    SkewSeries acc = one;
    SkewSeries pw = e;
    while (!pw.is_zero() && pw.val() < P) {
        acc = add(acc, pw);
        pw = mul(pw, e);
    }
    SkewSeries a0_inv = mul(acc, SkewSeries::constant(lead_inv, P));
    if (v == 0) return a0_inv;
    return conj_pow_series(-v, a0_inv).shifted(-v); // z^-v * a0^-1
}

SkewSeries SkewStructure::conj_pow_series(long long m, const SkewSeries& x) const {
    if (x.is_zero() || m == 0) return x;
    long long bound = x.known_to();
    SkewSeries acc = SkewSeries::zero_to(p(), bound);
    for (long long j = x.lead(); j < bound; ++j) {
        RatFunc c = x.coeff(j);
        if (c.is_zero()) continue;
        SkewSeries s = conj_pow(m, c, static_cast<int>(bound - j));
        acc = add(acc, s.shifted(j));
    }
    return acc;
}

SkewSeries SkewStructure::eval_poly_at_conj(const Poly& f, int prec) const {
    SkewSeries c = conj_series(prec);
    SkewSeries acc = SkewSeries::constant(RatFunc::constant(p(), f.coeff(f.degree())), prec);
    for (int k = f.degree() - 1; k >= 0; --k)
        acc = add(mul(acc, c), SkewSeries::constant(RatFunc::constant(p(), f.coeff(k)), prec));
    return acc;
}

SkewSeries SkewStructure::phi_once(const RatFunc& a, int prec) const {
    if (a.is_constant()) return SkewSeries::constant(alpha().apply(a), prec);
    if (a == t()) return conj_series(prec);
    SkewSeries num = eval_poly_at_conj(a.num(), prec);
    if (a.den().is_one()) return num;
    SkewSeries den = eval_poly_at_conj(a.den(), prec);
    return mul(num, inv(den));
}

SkewSeries SkewStructure::phi_inv_once(const RatFunc& a, int prec) const {
    // Solve z x z^-1 = a coefficient by coefficient; the system is triangular
    // because the coefficient of z^i only involves x_0 .. x_i.
    Mobius ainv = alpha().inverse();
    std::vector<RatFunc> x(static_cast<size_t>(prec), RatFunc::zero(p()));
    x[0] = ainv.apply(a);
    for (int i = 1; i < prec; ++i) {
        RatFunc s = RatFunc::zero(p());
        for (int k = 0; k < i; ++k) {
            if (x[static_cast<size_t>(k)].is_zero()) continue;
            s = s + delta_unchecked(1, i - k, x[static_cast<size_t>(k)]);
        }
        x[static_cast<size_t>(i)] = ainv.apply(-s);
    }
    return SkewSeries::make(p(), 0, std::move(x));
}

SkewSeries SkewStructure::conj_pow_uncached(long long m, const RatFunc& a, int prec) const {
    if (m == 1) return phi_once(a, prec);
    if (m > 1) return conj_pow_series(1, conj_pow(m - 1, a, prec));
    if (m == -1) return phi_inv_once(a, prec);
    return conj_pow_series(-1, conj_pow(m + 1, a, prec));
}

SkewSeries SkewStructure::conj_pow(long long m, const RatFunc& a, int prec) const {
    if (prec <= 0) throw EmptyPrecision("conjugation requested with no coefficients");
    if (a.p() != p()) throw InconsistentStructure("element over a different prime");
    int P = std::min(prec, precision());
    if (a.is_zero()) return SkewSeries::zero_to(p(), P);
    if (m == 0) return SkewSeries::constant(a, P);

    std::pair<long long, RatFunc> key{m, a};
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->phi.find(key);
        if (it != cache_->phi.end() && it->second.known_to() >= P) return it->second.truncated(P);
    }
    SkewSeries r = conj_pow_uncached(m, a, P);
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->phi.find(key);
        if (it == cache_->phi.end() || it->second.known_to() < r.known_to())
            cache_->phi[key] = r;
    }
    return r;
}

RatFunc SkewStructure::delta_unchecked(long long m, int i, const RatFunc& a) const {
    if (m == 0 || a.is_zero()) return RatFunc::zero(p());
    return conj_pow(m, a, i + 1).coeff(i);
}

RatFunc SkewStructure::delta(long long m, int i, const RatFunc& a) const {
    if (i < 1) throw InvalidIndex("delta index must be >= 1, got " + std::to_string(i));
    if (i >= precision())
        throw PrecisionExceeded("delta index " + std::to_string(i) + " not below precision " +
                                std::to_string(precision()));
    return delta_unchecked(m, i, a);
}

// ---------------------------------------------------------------------------
// Identity checks

CheckResult SkewStructure::check_product_rule(const RatFunc& a, const RatFunc& b, long long m,
                                              int i) const {
    if (i < 1) throw InvalidIndex("index must be >= 1");
    if (i >= precision()) throw PrecisionExceeded("index " + std::to_string(i) + " out of range");
    CheckResult res;
    RatFunc lhs = delta(m, i, a * b);

    RatFunc rhs = delta(m, i, a) * alpha().pow(i + m).apply(b) +
                  alpha().pow(m).apply(a) * delta(m, i, b);
    for (int k = 1; k < i; ++k) rhs = rhs + delta(m, i - k, a) * delta(i - k + m, k, b);
    res.push("twisted", lhs, rhs);

    if (alpha().is_identity()) {
        RatFunc rhs2 = delta(m, i, a) * b + a * delta(m, i, b);
        for (int k = 1; k < i; ++k) {
            RatFunc factor = delta(m, i - k, a);
            if (factor.is_zero()) continue;
            // Sum over compositions of k into l ordered positive parts; the
            // binomial weight depends only on l.
            RatFunc inner = RatFunc::zero(p());
            std::vector<int> parts;
            std::function<void(int)> rec = [&](int left) {
                if (left == 0) {
                    uint32_t c = binom_shifted(i - k + m, static_cast<long long>(parts.size()), k, p());
                    if (c != 0) {
                        RatFunc x = b;
                        for (size_t idx = parts.size(); idx-- > 0;)
                            x = delta(1, parts[idx], x);
                        inner = inner + x.scaled(c);
                    }
                    return;
                }
                for (int j = 1; j <= left; ++j) {
                    parts.push_back(j);
                    rec(left - j);
                    parts.pop_back();
                }
            };
            rec(k);
            rhs2 = rhs2 + factor * inner;
        }
        res.push("binomial", lhs, rhs2);
    }
    return res;
}

CheckResult SkewStructure::check_conj_tower(const RatFunc& a, long long m, int i) const {
    if (m == 0) throw InvalidIndex("tower check wants m != 0");
    if (i < 1) throw InvalidIndex("index must be >= 1");
    if (i >= precision()) throw PrecisionExceeded("index " + std::to_string(i) + " out of range");
    CheckResult res;
    RatFunc direct = delta(m, i, a);

    if (m > 1 || m < -1) {
        long long s = m > 0 ? 1 : -1;
        long long m2 = m - s;
        RatFunc rhs = alpha().pow(s).apply(delta(m2, i, a)) +
                      delta(s, i, alpha().pow(m2).apply(a));
        for (int j = 1; j < i; ++j) rhs = rhs + delta(s, j, delta(m2, i - j, a));
        res.push("recursion", direct, rhs);
    } else {
        res.push("recursion", direct, direct);
    }

    RatFunc v = alpha().pow(-m).apply(delta(m, i, a)) + delta(-m, i, alpha().pow(m).apply(a));
    for (int j = 1; j < i; ++j) v = v + delta(-m, j, delta(m, i - j, a));
    res.push("mixed-sum", v, RatFunc::zero(p()));
    return res;
}

Interpretation SkewStructure::interpretation() const {
    SkewStructure self = *this;
    Interpretation interp;
    interp.p = p();
    interp.alpha = [self](const RatFunc& f) { return self.alpha().apply(f); };
    interp.delta = [self](int b, const RatFunc& f) { return self.delta(1, b, f); };
    return interp;
}

CheckResult SkewStructure::check_sigma_expansion(const RatFunc& a, const RatFunc& b, int i) const {
    if (i < 1) throw InvalidIndex("index must be >= 1");
    if (i >= precision()) throw PrecisionExceeded("index " + std::to_string(i) + " out of range");
    CheckResult res;
    RatFunc lhs = delta(1, i, a * b);
    Interpretation interp = interpretation();
    FreePoly alpha_word = FreePoly::from_word(word_alpha(1));
    RatFunc rhs = RatFunc::zero(p());
    for (int k = 0; k <= i; ++k) {
        FreePoly left = sigma_map(word_concat(word_delta(i - k), word_alpha(1)));
        FreePoly right = sigma_map(s_poly(i, k, SPolyMode::Recursion) * alpha_word);
        rhs = rhs + eval_free(left, interp, a) * eval_free(right, interp, b);
    }
    res.push("sigma", lhs, rhs);
    return res;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json SkewStructure::to_json() const {
    const auto& m = alpha().matrix();
    nlohmann::json j;
    j["p"] = p();
    j["precision"] = precision();
    j["alpha"] = {{"matrix", {{m[0], m[1]}, {m[2], m[3]}}}};
    size_t last = core_->conj.size();
    while (last > 1 && core_->conj[last - 1].is_zero()) --last;
    std::vector<std::string> conj;
    conj.reserve(last);
    for (size_t k = 0; k < last; ++k) conj.push_back(core_->conj[k].str());
    j["conj"] = conj;
    return j;
}

SkewStructure SkewStructure::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("structure file must be a JSON object");
    for (const char* key : {"p", "precision", "alpha", "conj"})
        if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    uint32_t p = j.at("p").get<uint32_t>();
    int precision = j.at("precision").get<int>();
    const auto& am = j.at("alpha").at("matrix");
    if (!am.is_array() || am.size() != 2 || am[0].size() != 2 || am[1].size() != 2)
        throw ParseError("alpha.matrix must be 2x2");
    Mobius alpha(p, am[0][0].get<long long>(), am[0][1].get<long long>(),
                 am[1][0].get<long long>(), am[1][1].get<long long>());
    std::vector<RatFunc> conj;
    for (const auto& entry : j.at("conj")) conj.push_back(RatFunc::parse(entry.get<std::string>(), p));
    return SkewStructure(p, alpha, std::move(conj), precision);
}

} // namespace skewforge
