#pragma once

#include <optional>
#include <utility>

#include "skewforge/skew.hpp"

namespace skewforge {

// Parameter change: either z' = z + u(b) z^(q+1) (Shift) or z' = u(b) z
// (Scale, b nonzero).
struct Reparam {
    enum class Kind { Shift, Scale };
    Kind kind;
    RatFunc b;
    int q = 1; // Shift only

    static Reparam shift(RatFunc b, int q) { return Reparam{Kind::Shift, std::move(b), q}; }
    static Reparam scale(RatFunc b) { return Reparam{Kind::Scale, std::move(b), 0}; }
};

// Embedding change: the generator lift becomes t' = u(t) + u(b) z^q.
struct Reembed {
    RatFunc b;
    int q = 1;
};

// A finite value or a statement "at least this order"; the latter is what
// finite precision can honestly assert about the paper-side infinity cases.
struct Bound {
    bool finite = false;
    long long value = 0;

    static Bound exactly(long long v) { return Bound{true, v}; }
    static Bound at_least(long long v) { return Bound{false, v}; }

    friend bool operator==(const Bound& a, const Bound& b) {
        return a.finite == b.finite && a.value == b.value;
    }
};

struct ReparamStep {
    std::string kind; // "shift" | "scale"
    RatFunc b;
    int q = 0;
};

// Returns the presentation of the same ring in the new parameter. The input
// structure is never modified. Output precision equals input precision.
SkewStructure reparam(const SkewStructure& s, const Reparam& r);

// New structure whose generator is the lift t' = u(t) + u(b) z^q; requires
// alpha = id.
SkewStructure reembed(const SkewStructure& s, const Reembed& r);

// New structure presented on the generator t' = g(t); the automorphism is
// conjugated by g in PGL_2 and every coefficient is re-expressed through the
// new generator.
SkewStructure change_generator(const SkewStructure& s, const Mobius& g);

struct GaloisStep {
    int j = 0;
    RatFunc b; // the shift coefficient applied at order j
};

struct GaloisResult {
    SkewStructure out;
    std::vector<GaloisStep> steps;
    bool complete = true;
    int normalized_below = 0; // delta_j(t) = 0 for every n∤j strictly below this
};

// Iteratively removes every slot delta_j(t) with ord(alpha) ∤ j by inner
// shift steps, sweeping upward. When the last slot cannot be reached the
// output is truncated below it and `complete` is false.
GaloisResult normalize_galois(const SkewStructure& s);

struct KillResult {
    std::optional<SkewStructure> structure; // empty iff obstructed
    bool obstructed = false;
    int target = 0;
    std::string reason;
};

// Removes delta_target(t) by one shift, alpha = id only. Obstructed (and
// untouched) exactly when target ≡ 2 * local height (mod p).
KillResult kill_coefficient(const SkewStructure& s, int target);

struct ModulusResult {
    SkewStructure out;
    std::vector<std::pair<int, std::string>> obstructions;
};

// Ascending sweep of kill_coefficient over every index not divisible by d.
ModulusResult normalize_modulus(const SkewStructure& s, int d);

// Least j >= 1 with delta_j(t) != 0; alpha = id required.
Bound local_height(const SkewStructure& s);

struct DInvariantResult {
    Bound d;
    std::vector<ReparamStep> trail;
    SkewStructure final_structure;
};

// Order of vanishing of z^-i u(s) z^i - u(s) - u(-i delta_i(s)) z^i,
// maximized over parameters by the greedy shift loop; stops at a value
// congruent to 2i mod p or at the precision bound.
DInvariantResult d_invariant(const SkewStructure& s, const RatFunc& elem);

struct InvariantReport {
    int alpha_order = 1;
    std::optional<Bound> height;     // defined when alpha = id
    std::optional<Bound> d;          // defined when the height is finite and coprime to p
    std::vector<ReparamStep> trail;
    std::vector<std::pair<int, std::string>> obstructions;

    nlohmann::json to_json() const;
};

InvariantReport invariants(const SkewStructure& s);

// Coefficient table expressing the maps n-delta-m restricted to F_p(t) as
// polynomials in the reference derivation d/dt: rows[m][q-1] multiplies
// (d/dt)^q. Verified on construction against the factorial closed form of
// the diagonal entries and by sampling the operator identity.
struct CTable {
    long long n = 0;
    int j = 1;
    int kmax = 1;
    std::map<int, std::vector<RatFunc>> rows;
    bool closed_form_ok = true;
    bool sampling_ok = true;
};

CTable c_table(const SkewStructure& s, long long n, int j, int kmax, int samples = 20,
               uint64_t seed = 0x5eed);

// The constant in delta_{k i} = c_k * delta_i^k for a structure whose first
// nonzero slot is i: product (i+1)(2i+1)...((k-1)i+1) / k! mod p.
FpElem level_constant(int i, int k, uint32_t p);

// Samples the operator identity delta_{k i} = c_k delta_i^k on random inputs.
bool check_level_constant(const SkewStructure& s, int i, int k, int samples, uint64_t seed);

} // namespace skewforge
