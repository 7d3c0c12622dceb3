#include "skewforge/freering.hpp"

#include <algorithm>

namespace skewforge {

FreePoly FreePoly::from_word(FreeWord w, long long coeff) {
    FreePoly out;
    out.add_term(w, coeff);
    return out;
}

void FreePoly::add_term(const FreeWord& w, long long coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

FreePoly operator+(const FreePoly& a, const FreePoly& b) {
    FreePoly out = a;
    for (const auto& [w, c] : b.terms_) out.add_term(w, c);
    return out;
}

FreePoly operator-(const FreePoly& a, const FreePoly& b) {
    FreePoly out = a;
    for (const auto& [w, c] : b.terms_) out.add_term(w, -c);
    return out;
}

FreePoly operator*(const FreePoly& a, const FreePoly& b) {
    FreePoly out;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) out.add_term(word_concat(wa, wb), ca * cb);
    return out;
}

FreePoly FreePoly::scaled(long long s) const {
    FreePoly out;
    if (s == 0) return out;
    for (const auto& [w, c] : terms_) out.add_term(w, c * s);
    return out;
}

FreeWord word_alpha(int n) { return FreeWord(static_cast<size_t>(n), FreeLetter::alpha()); }
FreeWord word_delta(int n) { return FreeWord(static_cast<size_t>(n), FreeLetter::delta()); }

FreeWord word_concat(FreeWord a, const FreeWord& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string word_str(const FreeWord& w) {
    if (w.empty()) return "1";
    std::string out;
    size_t i = 0;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!out.empty()) out += ".";
        int code = w[i];
        if (FreeLetter::is_alpha(code))
            out += "a";
        else if (FreeLetter::is_plain_delta(code))
            out += "d";
        else
            out += "d" + std::to_string(FreeLetter::sub_of(code));
        size_t run = j - i;
        if (run > 1) out += "^" + std::to_string(run);
        i = j;
    }
    return out;
}

std::string FreePoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
        long long a = c;
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a < 0 ? " - " : " + ";
            if (a < 0) a = -a;
        }
        if (a != 1 || w.empty()) out += std::to_string(a);
        if (a != 1 && !w.empty()) out += "*";
        if (!w.empty()) out += word_str(w);
    }
    return out;
}

namespace {

struct Block {
    int alphas = 0;
    int deltas = 0;
};

// Decompose into A^a1 D^b1 ... A^an D^bn with a1 >= 0, bn >= 0 and interior
// exponents >= 1.
std::vector<Block> decompose(const FreeWord& w) {
    std::vector<Block> blocks;
    size_t i = 0;
    while (i < w.size()) {
        Block blk;
        while (i < w.size() && FreeLetter::is_alpha(w[i])) {
            ++blk.alphas;
            ++i;
        }
        while (i < w.size() && FreeLetter::is_plain_delta(w[i])) {
            ++blk.deltas;
            ++i;
        }
        blocks.push_back(blk);
    }
    return blocks;
}

} // namespace

FreePoly sigma_map(const FreeWord& w) {
    for (int code : w)
        if (FreeLetter::is_sub_delta(code))
            throw MalformedWord("sigma input must use only plain letters, got " + word_str(w));

    if (w.empty()) return FreePoly::from_word({});
    std::vector<Block> blocks = decompose(w);
    size_t n = blocks.size();

    // Single block: either pure A's or a trailing plain D-run; nothing to
    // absorb, the word is its own image.
    if (n == 1) return FreePoly::from_word(w);

    // Each interior D-run becomes one subscripted letter and absorbs a single
    // A from the run that follows it; the leading A-run is kept whole and a
    // trailing plain D-run stays plain.
    FreeWord out = word_alpha(blocks[0].alphas);
    for (size_t j = 0; j + 1 < n; ++j) {
        out.push_back(FreeLetter::delta_sub(blocks[j].deltas));
        int rest = blocks[j + 1].alphas - 1;
        if (rest < 0)
            throw MalformedWord("no A available after a D-run in " + word_str(w));
        out = word_concat(std::move(out), word_alpha(rest));
    }
    out = word_concat(std::move(out), word_delta(blocks[n - 1].deltas));
    return FreePoly::from_word(std::move(out));
}

FreePoly sigma_map(const FreePoly& poly) {
    FreePoly out;
    for (const auto& [w, c] : poly.terms()) out = out + sigma_map(w).scaled(c);
    return out;
}

FreePoly s_poly(int i, int k, SPolyMode mode) {
    if (i < 1 || k < 0 || k > i)
        throw InvalidIndex("s_poly wants 1 <= i and 0 <= k <= i, got i=" + std::to_string(i) +
                           " k=" + std::to_string(k));
    if (mode == SPolyMode::Definition) {
        FreeWord w = word_concat(word_alpha(i - k), word_delta(k));
        std::sort(w.begin(), w.end());
        FreePoly out;
        do {
            out.add_term(w, 1);
        } while (std::next_permutation(w.begin(), w.end()));
        return out;
    }
    // Recursion from S(1,0) = A, S(1,1) = D, seeded by the empty word.
    std::vector<std::vector<FreePoly>> table(static_cast<size_t>(i) + 1);
    table[0] = {FreePoly::from_word({})};
    for (int n = 1; n <= i; ++n) {
        table[static_cast<size_t>(n)].resize(static_cast<size_t>(n) + 1);
        for (int m = 0; m <= n; ++m) {
            FreePoly acc;
            if (m <= n - 1)
                acc = acc + FreePoly::from_word(word_alpha(1)) * table[static_cast<size_t>(n - 1)][static_cast<size_t>(m)];
            if (m >= 1)
                acc = acc + FreePoly::from_word(word_delta(1)) * table[static_cast<size_t>(n - 1)][static_cast<size_t>(m - 1)];
            table[static_cast<size_t>(n)][static_cast<size_t>(m)] = acc;
        }
    }
    return table[static_cast<size_t>(i)][static_cast<size_t>(k)];
}

RatFunc eval_free(const FreePoly& poly, const Interpretation& interp, const RatFunc& a) {
    if (!interp.alpha || !interp.delta) throw MissingInterpretation("interpretation is incomplete");
    RatFunc acc = RatFunc::zero(a.p());
    for (const auto& [w, c] : poly.terms()) {
        RatFunc x = a;
        for (size_t idx = w.size(); idx-- > 0;) {
            int code = w[idx];
            if (FreeLetter::is_alpha(code)) {
                x = interp.alpha(x);
            } else if (FreeLetter::is_sub_delta(code)) {
                x = interp.delta(FreeLetter::sub_of(code), x);
            } else {
                throw MissingInterpretation("plain 'd' has no interpretation in " + word_str(w));
            }
        }
        acc = acc + x.scaled(c);
    }
    return acc;
}

} // namespace skewforge
