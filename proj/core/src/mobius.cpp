#include "skewforge/mobius.hpp"

namespace skewforge {

Mobius::Mobius(uint32_t p, long long a, long long b, long long c, long long d) : p_(p) {
    if (!is_prime(p)) throw BadModulus("p = " + std::to_string(p) + " is not prime");
    m_ = {fp_of(a, p), fp_of(b, p), fp_of(c, p), fp_of(d, p)};
    uint32_t det = fp_sub(fp_mul(m_[0], m_[3], p_), fp_mul(m_[1], m_[2], p_), p_);
    if (det == 0) throw Error("singular matrix for automorphism of F_p(t)");
    normalize();
}

void Mobius::normalize() {
    for (uint32_t v : m_) {
        if (v != 0) {
            uint32_t s = fp_inv(v, p_);
            for (auto& e : m_) e = fp_mul(e, s, p_);
            return;
        }
    }
}

bool Mobius::is_identity() const { return m_[0] == 1 && m_[1] == 0 && m_[2] == 0 && m_[3] == 1; }

Mobius Mobius::compose(const Mobius& o) const {
    if (p_ != o.p_) throw Error("mixed moduli in automorphism composition");
    return Mobius(p_,
                  fp_add(fp_mul(m_[0], o.m_[0], p_), fp_mul(m_[1], o.m_[2], p_), p_),
                  fp_add(fp_mul(m_[0], o.m_[1], p_), fp_mul(m_[1], o.m_[3], p_), p_),
                  fp_add(fp_mul(m_[2], o.m_[0], p_), fp_mul(m_[3], o.m_[2], p_), p_),
                  fp_add(fp_mul(m_[2], o.m_[1], p_), fp_mul(m_[3], o.m_[3], p_), p_));
}

Mobius Mobius::inverse() const {
    return Mobius(p_, m_[3], fp_neg(m_[1], p_), fp_neg(m_[2], p_), m_[0]);
}

Mobius Mobius::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Mobius r = identity(p_);
    Mobius base = *this;
    unsigned long long k = static_cast<unsigned long long>(e);
    while (k) {
        if (k & 1) r = r.compose(base);
        base = base.compose(base);
        k >>= 1;
    }
    return r;
}

int Mobius::order() const {
    Mobius acc = *this;
    long long bound = static_cast<long long>(p_) * (static_cast<long long>(p_) * p_ - 1);
    for (int n = 1; n <= bound; ++n) {
        if (acc.is_identity()) return n;
        acc = acc.compose(*this);
    }
    throw Error("automorphism order not found below |PGL_2(F_p)|");
}

RatFunc Mobius::image_of_t() const {
    Poly num(p_, {m_[1], m_[0]});
    Poly den(p_, {m_[3], m_[2]});
    return RatFunc(std::move(num), std::move(den));
}

RatFunc Mobius::apply(const RatFunc& f) const {
    if (is_identity()) return f;
    return f.substitute(image_of_t());
}

} // namespace skewforge
