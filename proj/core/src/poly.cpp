#include "skewforge/poly.hpp"

#include <algorithm>

namespace skewforge {

Poly::Poly(uint32_t p, std::vector<uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p_;
    trim();
}

Poly Poly::constant(uint32_t p, long long v) {
    uint32_t r = fp_of(v, p);
    Poly out(p);
    if (r) out.c_ = {r};
    return out;
}

Poly Poly::monomial(uint32_t p, int deg, long long v) {
    uint32_t r = fp_of(v, p);
    Poly out(p);
    if (r) {
        out.c_.assign(static_cast<size_t>(deg) + 1, 0u);
        out.c_.back() = r;
    }
    return out;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Poly::check_same(const Poly& o) const {
    if (p_ != o.p_) throw Error("mixed moduli: " + std::to_string(p_) + " vs " + std::to_string(o.p_));
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(fp_inv(leading(), p_));
}

Poly Poly::scaled(uint32_t s) const {
    s %= p_;
    Poly out(p_);
    if (s == 0) return out;
    out.c_ = c_;
    for (auto& v : out.c_) v = fp_mul(v, s, p_);
    return out;
}

Poly Poly::derivative() const {
    Poly out(p_);
    if (c_.size() <= 1) return out;
    out.c_.resize(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k)
        out.c_[k - 1] = fp_mul(c_[k], static_cast<uint32_t>(k % p_), p_);
    out.trim();
    return out;
}

uint32_t Poly::eval(uint32_t x) const {
    uint32_t r = 0;
    for (size_t k = c_.size(); k-- > 0;) r = fp_add(fp_mul(r, x, p_), c_[k], p_);
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly out(a.p_);
    out.c_.resize(std::max(a.c_.size(), b.c_.size()), 0u);
    for (size_t k = 0; k < out.c_.size(); ++k)
        out.c_[k] = fp_add(a.coeff(static_cast<int>(k)), b.coeff(static_cast<int>(k)), a.p_);
    out.trim();
    return out;
}

Poly operator-(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly out(a.p_);
    out.c_.resize(std::max(a.c_.size(), b.c_.size()), 0u);
    for (size_t k = 0; k < out.c_.size(); ++k)
        out.c_[k] = fp_sub(a.coeff(static_cast<int>(k)), b.coeff(static_cast<int>(k)), a.p_);
    out.trim();
    return out;
}

Poly Poly::operator-() const {
    Poly out(p_);
    out.c_ = c_;
    for (auto& v : out.c_) v = fp_neg(v, p_);
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly out(a.p_);
    if (a.is_zero() || b.is_zero()) return out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, 0u);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            out.c_[i + j] = fp_add(out.c_[i + j], fp_mul(a.c_[i], b.c_[j], a.p_), a.p_);
    }
    out.trim();
    return out;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    a.check_same(b);
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    q = Poly(a.p_);
    r = a;
    if (a.degree() < b.degree()) return;
    uint32_t linv = fp_inv(b.leading(), a.p_);
    std::vector<uint32_t> qc(static_cast<size_t>(a.degree() - b.degree()) + 1, 0u);
    std::vector<uint32_t> rc = a.c_;
    for (int k = a.degree(); k >= b.degree(); --k) {
        uint32_t top = rc[static_cast<size_t>(k)];
        if (top == 0) continue;
        uint32_t f = fp_mul(top, linv, a.p_);
        qc[static_cast<size_t>(k - b.degree())] = f;
        for (int j = 0; j <= b.degree(); ++j) {
            size_t idx = static_cast<size_t>(k - b.degree() + j);
            rc[idx] = fp_sub(rc[idx], fp_mul(f, b.coeff(j), a.p_), a.p_);
        }
    }
    q = Poly(a.p_, std::move(qc));
    r = Poly(a.p_, std::move(rc));
}

Poly operator%(const Poly& a, const Poly& b) {
    Poly q(a.p_), r(a.p_);
    Poly::divmod(a, b, q, r);
    return r;
}

Poly operator/(const Poly& a, const Poly& b) {
    Poly q(a.p_), r(a.p_);
    Poly::divmod(a, b, q, r);
    return q;
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

Poly Poly::compose(const Poly& g) const {
    check_same(g);
    Poly acc = Poly::zero(p_);
    for (size_t k = c_.size(); k-- > 0;) acc = acc * g + Poly::constant(p_, c_[k]);
    return acc;
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        uint32_t v = coeff(k);
        if (v == 0) continue;
        if (!out.empty()) out += "+";
        if (k == 0) {
            out += std::to_string(v);
        } else {
            if (v != 1) out += std::to_string(v) + "*";
            out += "t";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

} // namespace skewforge
