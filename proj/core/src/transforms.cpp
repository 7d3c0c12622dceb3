#include "skewforge/transforms.hpp"

#include <random>
#include <tuple>

namespace skewforge {

namespace {

// Express X (valuation >= 0, known to the structure precision) in powers of
// the new parameter zp: X = sum out[k] * zp^k. The zp-powers form a
// triangular system because zp = (unit) * z.
std::vector<RatFunc> rewrite_in_powers(const SkewStructure& s, SkewSeries x, const SkewSeries& zp) {
    const int n = s.precision();
    std::vector<RatFunc> out;
    out.reserve(static_cast<size_t>(n));
    SkewSeries power = s.lift(RatFunc::one(s.p())); // zp^0
    for (int k = 0; k < n; ++k) {
        RatFunc leading = power.coeff(k); // nonzero: product of unit leads
        RatFunc c = x.coeff(k) / leading;
        out.push_back(c);
        if (!c.is_zero()) x = s.sub(x, s.lmul(c, power));
        if (k + 1 < n) power = s.mul(power, zp);
    }
    return out;
}

// Express X through the embedding sending f to f evaluated at the series tp
// (tp = t + O(z^q)): X = sum u'(out[k]) z^k.
std::vector<RatFunc> rewrite_in_embedding(const SkewStructure& s, SkewSeries x,
                                          const SkewSeries& tp) {
    const int n = s.precision();
    auto embed = [&](const RatFunc& f) -> SkewSeries {
        // f(tp) computed inside the ring; denominators stay invertible since
        // tp has valuation-zero leading coefficient t.
        SkewSeries num = [&] {
            SkewSeries acc = s.lift(RatFunc::constant(s.p(), f.num().coeff(f.num().degree())));
            for (int k = f.num().degree() - 1; k >= 0; --k)
                acc = s.add(s.mul(acc, tp), s.lift(RatFunc::constant(s.p(), f.num().coeff(k))));
            return acc;
        }();
        if (f.den().is_one()) return num;
        SkewSeries den = [&] {
            SkewSeries acc = s.lift(RatFunc::constant(s.p(), f.den().coeff(f.den().degree())));
            for (int k = f.den().degree() - 1; k >= 0; --k)
                acc = s.add(s.mul(acc, tp), s.lift(RatFunc::constant(s.p(), f.den().coeff(k))));
            return acc;
        }();
        return s.mul(num, s.inv(den));
    };
    std::vector<RatFunc> out;
    out.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        RatFunc c = x.coeff(k);
        out.push_back(c);
        if (!c.is_zero()) x = s.sub(x, embed(c).shifted(k));
    }
    return out;
}

} // namespace

SkewStructure reparam(const SkewStructure& s, const Reparam& r) {
    const int n = s.precision();
    if (r.kind == Reparam::Kind::Shift) {
        if (r.q < 1) throw InvalidIndex("shift order must be >= 1");
        if (r.q + 1 >= n)
            throw PrecisionExceeded("shift at order " + std::to_string(r.q) +
                                    " is invisible at precision " + std::to_string(n));
        if (r.b.is_zero()) return s;
        // z' = (1 + u(b) z^q) z
        SkewSeries unit = s.add(s.lift(RatFunc::one(s.p())),
                                SkewSeries::monomial(r.b, r.q, n));
        SkewSeries zp = s.mul(unit, s.z_pow(1));
        SkewSeries x = s.mul(s.mul(unit, s.conj_series(n)), s.inv(unit));
        return SkewStructure(s.p(), s.alpha(), rewrite_in_powers(s, x, zp), n);
    }
    if (r.b.is_zero()) throw DivisionByZero("scale by zero");
    SkewSeries b = s.lift(r.b);
    SkewSeries zp = s.mul(b, s.z_pow(1));
    SkewSeries x = s.mul(s.mul(b, s.conj_series(n)), s.inv(b));
    return SkewStructure(s.p(), s.alpha(), rewrite_in_powers(s, x, zp), n);
}

SkewStructure reembed(const SkewStructure& s, const Reembed& r) {
    if (!s.alpha().is_identity()) throw Unsupported("embedding change implemented for alpha = id");
    if (r.q < 1) throw InvalidIndex("embedding change order must be >= 1");
    const int n = s.precision();
    if (r.q >= n)
        throw PrecisionExceeded("embedding change at order " + std::to_string(r.q) +
                                " is invisible at precision " + std::to_string(n));
    if (r.b.is_zero()) return s;
    SkewSeries tp = s.add(s.lift(s.t()), SkewSeries::monomial(r.b, r.q, n));
    SkewSeries x = s.conj_pow_series(1, tp);
    return SkewStructure(s.p(), s.alpha(), rewrite_in_embedding(s, x, tp), n);
}

SkewStructure change_generator(const SkewStructure& s, const Mobius& g) {
    const int n = s.precision();
    Mobius ginv = g.inverse();
    Mobius new_alpha = g.compose(s.alpha()).compose(ginv);
    SkewSeries image = s.conj_pow(1, g.image_of_t(), n);
    std::vector<RatFunc> conj;
    conj.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) conj.push_back(ginv.apply(image.coeff(k)));
    return SkewStructure(s.p(), new_alpha, std::move(conj), n);
}

GaloisResult normalize_galois(const SkewStructure& s) {
    const int n = s.alpha_order();
    const int prec = s.precision();
    SkewStructure cur = s;
    std::vector<GaloisStep> steps;
    if (n == 1) return GaloisResult{cur, steps, true, prec};

    RatFunc tt = s.t();
    for (;;) {
        int offender = 0;
        for (int j = 1; j < cur.precision(); ++j) {
            if (j % n == 0) continue;
            if (!cur.conj_coeff(j).is_zero()) {
                offender = j;
                break;
            }
        }
        if (offender == 0) return GaloisResult{cur, steps, true, cur.precision()};
        if (offender + 1 >= cur.precision()) {
            // The shift that would clean this slot is invisible at this
            // precision; report the honest bound instead of guessing.
            std::vector<RatFunc> truncated(cur.conj().begin(),
                                           cur.conj().begin() + offender);
            SkewStructure out(cur.p(), cur.alpha(), std::move(truncated), offender);
            return GaloisResult{out, steps, false, offender};
        }
        // delta_offender is an inner twisted derivation; the denominator is
        // nonzero exactly because n does not divide the offender index.
        RatFunc den = cur.alpha().pow(offender + 1).apply(tt) - cur.alpha().apply(tt);
        RatFunc d = cur.conj_coeff(offender) / den;
        cur = reparam(cur, Reparam::shift(-d, offender));
        if (!cur.conj_coeff(offender).is_zero())
            throw Error("normalization failed to clear slot " + std::to_string(offender));
        steps.push_back(GaloisStep{offender, -d});
    }
}

Bound local_height(const SkewStructure& s) {
    if (!s.alpha().is_identity())
        throw NotDefined("local height is defined only when alpha = id");
    for (int j = 1; j < s.precision(); ++j)
        if (!s.conj_coeff(j).is_zero()) return Bound::exactly(j);
    return Bound::at_least(s.precision());
}

KillResult kill_coefficient(const SkewStructure& s, int target) {
    if (!s.alpha().is_identity()) throw Unsupported("slot removal implemented for alpha = id");
    Bound h = local_height(s);
    if (!h.finite) throw Unsupported("structure commutes with z to known precision");
    int i = static_cast<int>(h.value);
    if (target <= i)
        throw Unsupported("target " + std::to_string(target) + " not above the local height " +
                          std::to_string(i));
    if (target >= s.precision())
        throw PrecisionExceeded("target " + std::to_string(target) + " out of range");
    if (s.conj_coeff(target).is_zero()) return KillResult{s, false, target, "already zero"};

    int q = target - i;
    if (fp_of(q - i, s.p()) == 0)
        return KillResult{std::nullopt, true, target,
                          "target == 2 * height (mod p); the shift cannot move this slot"};
    RatFunc denom = s.conj_coeff(i).scaled(fp_of(q - i, s.p()));
    RatFunc b = -(s.conj_coeff(target) / denom);
    SkewStructure out = reparam(s, Reparam::shift(b, q));
    if (!out.conj_coeff(target).is_zero())
        throw Error("slot " + std::to_string(target) + " survived its removal shift");
    return KillResult{out, false, target, "removed"};
}

ModulusResult normalize_modulus(const SkewStructure& s, int d) {
    if (!s.alpha().is_identity()) throw Unsupported("normalization implemented for alpha = id");
    if (d < 1) throw InvalidIndex("modulus must be >= 1");
    ModulusResult res{s, {}};
    if (d == 1) return res;
    Bound h = local_height(s);
    if (!h.finite) return res;
    int i = static_cast<int>(h.value);
    for (int target = i + 1; target < s.precision(); ++target) {
        if (target % d == 0) continue;
        if (res.out.conj_coeff(target).is_zero()) continue;
        KillResult k = kill_coefficient(res.out, target);
        if (k.obstructed) {
            res.obstructions.emplace_back(target, k.reason);
            continue;
        }
        res.out = *k.structure;
    }
    return res;
}

DInvariantResult d_invariant(const SkewStructure& s, const RatFunc& elem) {
    if (!s.alpha().is_identity()) throw NotDefined("the invariant needs alpha = id");
    const int prec = s.precision();
    int i = 0;
    for (int j = 1; j < prec; ++j) {
        if (!s.delta(1, j, elem).is_zero()) {
            i = j;
            break;
        }
    }
    if (i == 0)
        throw NotDefined("element commutes with z to known precision; no first index");
    if (fp_of(i, s.p()) == 0)
        throw Unsupported("first index " + std::to_string(i) + " divisible by p");

    SkewStructure cur = s;
    std::vector<ReparamStep> trail;
    for (;;) {
        SkewSeries x = cur.conj_pow(-i, elem, prec);
        SkewSeries expr = cur.sub(cur.sub(x, cur.lift(elem)),
                                  SkewSeries::monomial(cur.delta(-i, i, elem), i, prec));
        if (expr.is_zero())
            return DInvariantResult{Bound::at_least(expr.known_to()), trail, cur};
        long long dp = expr.val();
        if (fp_of(dp - 2 * i, cur.p()) == 0)
            return DInvariantResult{Bound::exactly(dp), trail, cur};
        int q = static_cast<int>(dp) - i;
        RatFunc denom = cur.delta(-i, i, elem).scaled(fp_of(dp - 2 * i, cur.p()));
        RatFunc b = -(expr.coeff(dp) / denom);
        cur = reparam(cur, Reparam::shift(b, q));
        trail.push_back(ReparamStep{"shift", b, q});
    }
}

nlohmann::json InvariantReport::to_json() const {
    nlohmann::json j;
    j["alpha_order"] = alpha_order;
    auto bound_json = [](const std::optional<Bound>& b) -> nlohmann::json {
        if (!b) return {{"undefined", true}};
        if (b->finite) return {{"finite", b->value}};
        return {{"at_least", b->value}};
    };
    j["local_height"] = bound_json(height);
    j["d"] = bound_json(d);
    j["trail"] = nlohmann::json::array();
    for (const auto& step : trail)
        j["trail"].push_back({{"kind", step.kind}, {"b", step.b.str()}, {"q", step.q}});
    j["obstructions"] = nlohmann::json::array();
    for (const auto& [target, reason] : obstructions)
        j["obstructions"].push_back({{"target", target}, {"reason", reason}});
    return j;
}

InvariantReport invariants(const SkewStructure& s) {
    InvariantReport rep;
    rep.alpha_order = s.alpha_order();
    if (!s.alpha().is_identity()) return rep;
    rep.height = local_height(s);
    if (rep.height->finite && fp_of(rep.height->value, s.p()) != 0) {
        DInvariantResult di = d_invariant(s, s.t());
        rep.d = di.d;
        rep.trail = di.trail;
        if (rep.d->finite && fp_of(rep.d->value - 2 * rep.height->value, s.p()) != 0)
            throw Error("finite invariant violates the 2i congruence");
    }
    return rep;
}

namespace {

RatFunc random_ratfunc(std::mt19937_64& rng, uint32_t p, int max_deg) {
    auto draw = [&](int deg, bool monicish) {
        std::vector<uint32_t> c(static_cast<size_t>(deg) + 1);
        for (auto& v : c) v = static_cast<uint32_t>(rng() % p);
        if (monicish && c.back() == 0) c.back() = 1;
        return Poly(p, std::move(c));
    };
    Poly num = draw(static_cast<int>(rng() % static_cast<uint64_t>(max_deg + 1)), false);
    if (num.is_zero()) num = Poly::constant(p, 1);
    Poly den = draw(static_cast<int>(rng() % static_cast<uint64_t>(max_deg + 1)), true);
    return RatFunc(std::move(num), std::move(den));
}

} // namespace

CTable c_table(const SkewStructure& s, long long n, int j, int kmax, int samples, uint64_t seed) {
    const uint32_t p = s.p();
    if (n == 0) throw InvalidIndex("conjugation exponent must be nonzero");
    if (kmax < 1 || kmax >= static_cast<int>(p))
        throw Unsupported("depth must satisfy 1 <= kmax <= p-1, got " + std::to_string(kmax));
    Bound h = local_height(s);
    if (!h.finite || h.value != j)
        throw InvalidIndex("j must be the first nontrivial index of the structure");
    if ((kmax + 1) * j > s.precision())
        throw PrecisionExceeded("table reaches past the structure precision");

    RatFunc tt = s.t();
    std::map<std::tuple<long long, int, int>, RatFunc> memo;
    std::function<RatFunc(long long, int, int)> entry = [&](long long nn, int m, int q) -> RatFunc {
        if (q == 1) return s.delta(nn, m, tt);
        auto key = std::make_tuple(nn, m, q);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        RatFunc acc = RatFunc::zero(p);
        for (int l = j; l <= m - (q - 1) * j; ++l) {
            RatFunc head = s.delta(nn, l, tt);
            if (head.is_zero()) continue;
            acc = acc + head * entry(nn + l, m - l, q - 1);
        }
        acc = acc.scaled(fp_inv(fp_of(q, p), p));
        memo.emplace(key, acc);
        return acc;
    };

    CTable table;
    table.n = n;
    table.j = j;
    table.kmax = kmax;
    for (int m = j; m < (kmax + 1) * j; ++m) {
        int depth = std::min(m / j, kmax);
        std::vector<RatFunc> row;
        row.reserve(static_cast<size_t>(depth));
        for (int q = 1; q <= depth; ++q) row.push_back(entry(n, m, q));
        table.rows.emplace(m, std::move(row));
    }

    // Diagonal closed form: c(n, kj, k) = (k!)^-1 * prod_r delta_j(t) twisted
    // along the conjugation exponents n, n+j, ..., n+(k-1)j.
    for (int k = 1; k <= kmax; ++k) {
        RatFunc prod = RatFunc::one(p);
        uint32_t fact = 1;
        for (int r = 0; r < k; ++r) {
            prod = prod * s.delta(n + static_cast<long long>(r) * j, j, tt);
            fact = fp_mul(fact, static_cast<uint32_t>(r + 1), p);
        }
        prod = prod.scaled(fp_inv(fact, p));
        if (table.rows.at(k * j).back() != prod) table.closed_form_ok = false;
    }

    std::mt19937_64 rng(seed);
    for (const auto& [m, row] : table.rows) {
        for (int c = 0; c < samples; ++c) {
            RatFunc f = random_ratfunc(rng, p, 2);
            RatFunc lhs = s.delta(n, m, f);
            RatFunc rhs = RatFunc::zero(p);
            RatFunc der = f;
            for (size_t q = 0; q < row.size(); ++q) {
                der = der.derive();
                rhs = rhs + row[q] * der;
            }
            if (lhs != rhs) {
                table.sampling_ok = false;
                break;
            }
        }
        if (!table.sampling_ok) break;
    }
    return table;
}

FpElem level_constant(int i, int k, uint32_t p) {
    if (k < 1) throw InvalidIndex("k must be >= 1");
    if (k >= static_cast<int>(p)) throw Unsupported("k must stay below p");
    uint32_t num = 1, fact = 1;
    for (int r = 1; r < k; ++r)
        num = fp_mul(num, fp_of(static_cast<long long>(r) * i + 1, p), p);
    for (int r = 2; r <= k; ++r) fact = fp_mul(fact, static_cast<uint32_t>(r), p);
    return FpElem(static_cast<long long>(fp_mul(num, fp_inv(fact, p), p)), p);
}

bool check_level_constant(const SkewStructure& s, int i, int k, int samples, uint64_t seed) {
    if (k * i >= s.precision()) throw PrecisionExceeded("k*i reaches past the precision");
    FpElem ck = level_constant(i, k, s.p());
    std::mt19937_64 rng(seed);
    for (int c = 0; c < samples; ++c) {
        RatFunc f = random_ratfunc(rng, s.p(), 2);
        RatFunc lhs = s.delta(1, k * i, f);
        RatFunc rhs = f;
        for (int r = 0; r < k; ++r) rhs = s.delta(1, i, rhs);
        rhs = rhs.scaled(ck.value);
        if (lhs != rhs) return false;
    }
    return true;
}

} // namespace skewforge
