#pragma once

#include "skewforge/transforms.hpp"

namespace skewforge {

// Ready-made structure families used by the test sweeps and the CLI.
struct Preset {
    enum class Kind { TameSymbol, WildLevel, WildPLevel };
    Kind kind;
    uint32_t p = 3;
    int precision = 16;
    // TameSymbol: t -> zeta*t, trivial tail.
    FpElem zeta;
    // WildLevel: alpha = id, one tail slot `a` at index i.
    int i = 1;
    RatFunc a;
    // WildPLevel: alpha = id, slot 1 at index p*q.
    int q = 1;

    static Preset tame_symbol(uint32_t p, long long zeta, int precision = 16);
    static Preset wild_level(uint32_t p, int i, RatFunc a, int precision = 16);
    static Preset wild_p_level(uint32_t p, int q, int precision = 16);
};

SkewStructure make_preset(const Preset& pr);

// Accepts either the plain structure schema or the same schema with a
// "preset" shorthand object that is expanded before construction.
SkewStructure load_structure(const nlohmann::json& j);

struct ProbeResult {
    bool central = true;
    std::string witness_with; // "t" | "z" | "sample" when not central
    long long witness_val = 0;
    RatFunc witness_coeff;
};

// True iff X commutes with u(t) and z (and one pseudorandom sampled lift) to
// the available precision; otherwise reports the first failing commutator.
ProbeResult center_probe(const SkewStructure& s, const SkewSeries& x, uint64_t seed = 0x5eed);

// The field F_{q^n}, q = p^r, realized as F_p[x] modulo a pinned irreducible
// of degree r*n. Elements are reduced polynomials.
class FiniteFieldExt {
public:
    FiniteFieldExt(uint32_t p, int r, int n);

    uint32_t p() const { return p_; }
    int r() const { return r_; }
    int n() const { return n_; }
    uint64_t q() const { return q_; }            // p^r
    uint64_t field_size() const { return size_; } // q^n
    const Poly& modulus() const { return modulus_; }

    Poly reduce(const Poly& f) const;
    Poly mul(const Poly& a, const Poly& b) const;
    Poly pow(const Poly& a, uint64_t e) const;
    Poly element(uint64_t index) const; // base-p digit enumeration
    bool in_base_field(const Poly& a) const;

    // N(b) = b^(1 + q + ... + q^(n-1)); lands in F_q, which is checked.
    Poly norm(const Poly& b) const;

    // Some preimage of c under the norm, found by deterministic enumeration;
    // c must be a nonzero element of the base field.
    Poly solve_norm(const Poly& c) const;
    Poly solve_norm(long long c) const;

private:
    uint32_t p_;
    int r_, n_;
    uint64_t q_, size_;
    Poly modulus_;
};

} // namespace skewforge
