#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "skewforge/ratfunc.hpp"

namespace skewforge {

// Letters of the free rings Z<A, D> and Z<A, D, D1, D2, ...>. Codes order
// the alphabet as A < D < D1 < D2 < ...
struct FreeLetter {
    static constexpr int kAlpha = 0;
    static constexpr int kDelta = 1; // plain, un-subscripted

    static int alpha() { return kAlpha; }
    static int delta() { return kDelta; }
    static int delta_sub(int b) { return kDelta + b; } // b >= 1

    static bool is_alpha(int code) { return code == kAlpha; }
    static bool is_plain_delta(int code) { return code == kDelta; }
    static bool is_sub_delta(int code) { return code > kDelta; }
    static int sub_of(int code) { return code - kDelta; }
};

using FreeWord = std::vector<int>; // letter codes; empty word is the identity

// Length-lexicographic word order; fixes the canonical term order of a
// FreePoly so printed output is deterministic.
struct WordLess {
    bool operator()(const FreeWord& a, const FreeWord& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Integer-coefficient noncommutative polynomial; no zero coefficients kept.
class FreePoly {
public:
    FreePoly() = default;

    static FreePoly from_word(FreeWord w, long long coeff = 1);

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<FreeWord, long long, WordLess>& terms() const { return terms_; }

    void add_term(const FreeWord& w, long long coeff);

    friend FreePoly operator+(const FreePoly& a, const FreePoly& b);
    friend FreePoly operator-(const FreePoly& a, const FreePoly& b);
    friend FreePoly operator*(const FreePoly& a, const FreePoly& b); // word concatenation
    FreePoly scaled(long long s) const;

    friend bool operator==(const FreePoly& a, const FreePoly& b) { return a.terms_ == b.terms_; }

    std::string str() const;

private:
    std::map<FreeWord, long long, WordLess> terms_;
};

FreeWord word_alpha(int n);
FreeWord word_delta(int n);
FreeWord word_concat(FreeWord a, const FreeWord& b);
std::string word_str(const FreeWord& w); // e.g. "a.d1.a^2"; "1" for the empty word

// The block substitution A^a1 D^b1 ... A^an D^bn  ->  A^a1 D_{b1} ... D_{b_{n-1}} A^{an-1} D^bn.
// Pure-A words map to themselves; a word whose single block starts with no A
// and needs the decrement raises MalformedWord. Input letters must be plain.
FreePoly sigma_map(const FreeWord& w);
FreePoly sigma_map(const FreePoly& poly);

enum class SPolyMode { Definition, Recursion };

// Sum of all distinct arrangements of (i-k) A's and k D's. Both construction
// modes must agree; the Definition mode enumerates arrangements, the
// Recursion mode uses S(i,i) = D^i, S(i,0) = A^i,
// S(i+1,k+1) = A*S(i,k+1) + D*S(i,k).
FreePoly s_poly(int i, int k, SPolyMode mode);

// Concrete realizations of the symbolic operators on F_p(t). `delta` is the
// family b |-> delta_b for 1 <= b; out-of-range subscripts must throw from
// the callable itself.
struct Interpretation {
    uint32_t p = 0;
    std::function<RatFunc(const RatFunc&)> alpha;
    std::function<RatFunc(int, const RatFunc&)> delta;
};

// Words act by composition with the leftmost letter applied last; integer
// coefficients act mod p. Plain D has no interpretation and raises
// MissingInterpretation.
RatFunc eval_free(const FreePoly& poly, const Interpretation& interp, const RatFunc& a);

} // namespace skewforge
