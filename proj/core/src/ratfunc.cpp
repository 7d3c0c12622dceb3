#include "skewforge/ratfunc.hpp"

#include <cctype>

namespace skewforge {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void RatFunc::normalize() {
    if (num_.p() != den_.p()) throw Error("mixed moduli in rational function");
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.p(), 1);
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    uint32_t linv = fp_inv(den_.leading(), den_.p());
    num_ = num_.scaled(linv);
    den_ = den_.scaled(linv);
    if (num_.degree() > kDegreeLimit || den_.degree() > kDegreeLimit)
        throw DegreeOverflow("rational function degree exceeds " + std::to_string(kDegreeLimit));
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByZero("rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::scaled(long long s) const {
    return RatFunc(num_.scaled(fp_of(s, p())), den_);
}

RatFunc RatFunc::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r = RatFunc::one(p());
    RatFunc base = *this;
    unsigned long long k = static_cast<unsigned long long>(e);
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

RatFunc RatFunc::derive() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc poly_at(const Poly& f, const RatFunc& x) {
    RatFunc acc = RatFunc::zero(x.p());
    for (int k = f.degree(); k >= 0; --k)
        acc = acc * x + RatFunc::constant(x.p(), f.coeff(k));
    return acc;
}

RatFunc RatFunc::substitute(const RatFunc& g) const {
    return poly_at(num_, g) / poly_at(den_, g);
}

std::string RatFunc::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(what + " at position " + std::to_string(pos) + " in \"" + s + "\"");
    }
};

uint64_t parse_nat(Cursor& c) {
    c.skip_ws();
    if (c.pos >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
        c.fail("expected a number");
    uint64_t v = 0;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
        v = v * 10 + static_cast<uint64_t>(c.s[c.pos] - '0');
        if (v > (1ull << 40)) c.fail("number too large");
        ++c.pos;
    }
    return v;
}

// term := nat | nat "*t" ("^" nat)? | "t" ("^" nat)?
Poly parse_term(Cursor& c, uint32_t p) {
    uint32_t coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        coeff = static_cast<uint32_t>(parse_nat(c) % p);
        have_coeff = true;
        if (!c.eat('*')) return Poly::constant(p, coeff);
    }
    if (!c.eat('t')) {
        if (have_coeff) c.fail("expected 't' after '*'");
        c.fail("expected a term");
    }
    int exp = 1;
    if (c.eat('^')) {
        uint64_t e = parse_nat(c);
        if (e > RatFunc::kDegreeLimit) throw DegreeOverflow("exponent " + std::to_string(e));
        exp = static_cast<int>(e);
    }
    return Poly::monomial(p, exp, coeff);
}

Poly parse_poly(Cursor& c, uint32_t p) {
    bool negate = c.eat('-');
    if (!negate) c.eat('+');
    Poly acc = parse_term(c, p);
    if (negate) acc = -acc;
    for (;;) {
        char op = c.peek();
        if (op != '+' && op != '-') break;
        c.eat(op);
        Poly term = parse_term(c, p);
        acc = (op == '+') ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

RatFunc RatFunc::parse(const std::string& text, uint32_t p) {
    if (!is_prime(p)) throw BadModulus("p = " + std::to_string(p) + " is not prime");
    Cursor c{text};
    if (c.peek() == '(') {
        c.eat('(');
        Poly num = parse_poly(c, p);
        if (!c.eat(')')) c.fail("expected ')'");
        if (!c.eat('/')) c.fail("expected '/'");
        if (!c.eat('(')) c.fail("expected '('");
        Poly den = parse_poly(c, p);
        if (!c.eat(')')) c.fail("expected ')'");
        if (!c.done()) c.fail("trailing input");
        return RatFunc(std::move(num), std::move(den));
    }
    Poly num = parse_poly(c, p);
    if (!c.done()) c.fail("trailing input");
    return RatFunc::from_poly(std::move(num));
}

} // namespace skewforge
