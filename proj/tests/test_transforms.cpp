#include "doctest.h"

#include <random>

#include "skewforge/transforms.hpp"

using namespace skewforge;

namespace {

RatFunc rf(const std::string& s, uint32_t p) { return RatFunc::parse(s, p); }

SkewStructure ref3(int precision = 16) {
    return SkewStructure(3, Mobius::identity(3), {rf("t", 3), rf("1", 3)}, precision);
}

} // namespace

TEST_CASE("parameter shifts") {
    SkewStructure s = ref3();
    // any shift leaves the first slot alone here (the change lands at q+1)
    for (int q : {1, 2, 3}) {
        SkewStructure s2 = reparam(s, Reparam::shift(rf("t", 3), q));
        CHECK(s2.conj_coeff(1) == rf("1", 3));
        CHECK(s2.precision() == s.precision());
        for (int k = 1; k < q + 1; ++k) CHECK(s2.conj_coeff(k) == s.conj_coeff(k));
    }
    // a fully commutative structure is a fixed point of every shift
    SkewStructure tame(5, Mobius::identity(5), {rf("t", 5)}, 10);
    SkewStructure tame2 = reparam(tame, Reparam::shift(rf("t+2", 5), 2));
    for (int k = 1; k < 10; ++k) CHECK(tame2.conj_coeff(k).is_zero());

    CHECK_THROWS_AS(reparam(s, Reparam::shift(rf("1", 3), 15)), PrecisionExceeded);
}

TEST_CASE("parameter scaling") {
    SkewStructure s = ref3();
    SkewStructure s2 = reparam(s, Reparam::scale(rf("t", 3)));
    CHECK(s2.conj_coeff(1) == rf("(1)/(t)", 3));
    CHECK_THROWS_AS(reparam(s, Reparam::scale(rf("0", 3))), DivisionByZero);

    // scaling by a constant rescales slot k by c^-k
    SkewStructure s3 = reparam(s, Reparam::scale(rf("2", 3)));
    CHECK(s3.conj_coeff(1) == rf("2", 3));
}

TEST_CASE("embedding changes") {
    SkewStructure s = ref3();
    // t' = t + z conjugates exactly like t here
    SkewStructure e1 = reembed(s, Reembed{rf("1", 3), 1});
    CHECK(e1.to_json() == s.to_json());
    // a constant tail coefficient moves nothing below q + height
    SkewStructure s2(3, Mobius::identity(3), {rf("t", 3), rf("t", 3), rf("1", 3)}, 12);
    SkewStructure e2 = reembed(s2, Reembed{rf("2", 3), 2});
    for (int k = 1; k < 3; ++k) CHECK(e2.conj_coeff(k) == s2.conj_coeff(k));
    // predicted first change at q + 1: delta_1(b) - (d/dt delta_1(t)) b
    RatFunc expect = s2.conj_coeff(3) + s2.delta(1, 1, rf("2", 3)) -
                     s2.conj_coeff(1).derive() * rf("2", 3);
    CHECK(e2.conj_coeff(3) == expect);

    SkewStructure twisted(5, Mobius(5, 2, 0, 0, 1), {rf("2*t", 5)}, 8);
    CHECK_THROWS_AS(reembed(twisted, Reembed{rf("1", 5), 1}), Unsupported);
}

TEST_CASE("generator changes") {
    SkewStructure s = ref3(10);
    CHECK(change_generator(s, Mobius::identity(3)).to_json() == s.to_json());
    // t' = t + 1: slots re-expressed through the shifted generator
    SkewStructure g = change_generator(s, Mobius(3, 1, 1, 0, 1));
    CHECK(g.conj_coeff(1) == rf("1", 3)); // first map value times dg/dt = 1
    CHECK(g.alpha().is_identity());
    // round trip through g and g^-1
    SkewStructure back = change_generator(g, Mobius(3, 1, 1, 0, 1).inverse());
    CHECK(back.to_json() == s.to_json());
}

TEST_CASE("galois normalization") {
    // order-4 twist with a stray slot at 1: one inner step clears it
    SkewStructure s(5, Mobius(5, 2, 0, 0, 1), {rf("2*t", 5), rf("1", 5)}, 10);
    GaloisResult res = normalize_galois(s);
    CHECK(res.steps.size() >= 1);
    CHECK(res.steps[0].j == 1);
    CHECK(res.steps[0].b == -rf("(1)/(2*t)", 5)); // -delta_1(t)/(alpha^2(t)-alpha(t))
    for (int j = 1; j < res.normalized_below; ++j)
        if (j % 4 != 0) CHECK(res.out.conj_coeff(j).is_zero());
    // idempotent
    GaloisResult again = normalize_galois(res.out);
    CHECK(again.steps.empty());
    CHECK(again.out.to_json() == res.out.to_json());

    // tame structures are fixed points
    SkewStructure tame(5, Mobius(5, 2, 0, 0, 1), {rf("2*t", 5)}, 10);
    CHECK(normalize_galois(tame).steps.empty());
    // slots at multiples of the order are kept
    SkewStructure kept(5, Mobius(5, 2, 0, 0, 1),
                       {rf("2*t", 5), rf("0", 5), rf("0", 5), rf("0", 5), rf("1", 5)}, 10);
    CHECK(normalize_galois(kept).steps.empty());
}

TEST_CASE("slot removal") {
    // delta_1 and delta_3 slots; target 3 removed with b = -1/((2-1)*1) = 4
    SkewStructure s(5, Mobius::identity(5),
                    {rf("t", 5), rf("1", 5), rf("0", 5), rf("1", 5)}, 12);
    KillResult k = kill_coefficient(s, 3);
    CHECK_FALSE(k.obstructed);
    CHECK(k.structure->conj_coeff(3).is_zero());
    CHECK(k.structure->conj_coeff(1) == rf("1", 5));

    // target == 2 * height mod p is the obstruction, untouched otherwise
    SkewStructure s2(3, Mobius::identity(3),
                     {rf("t", 3), rf("1", 3), rf("1", 3)}, 12);
    KillResult k2 = kill_coefficient(s2, 2);
    CHECK(k2.obstructed);
    CHECK_FALSE(k2.structure.has_value());

    // already-zero targets return the structure unchanged
    KillResult k3 = kill_coefficient(s, 2);
    CHECK_FALSE(k3.obstructed);
    CHECK(k3.structure->to_json() == s.to_json());

    CHECK_THROWS_AS(kill_coefficient(s, 1), Unsupported); // not above the height
}

TEST_CASE("modulus normalization") {
    // first nonzero slot at p: already clean for d = p
    SkewStructure s(3, Mobius::identity(3),
                    {rf("t", 3), rf("0", 3), rf("0", 3), rf("1", 3)}, 12);
    ModulusResult r = normalize_modulus(s, 3);
    CHECK(r.obstructions.empty());
    CHECK(r.out.to_json() == s.to_json());

    // slot 5 is cleaned when reachable, or logged when obstructed
    SkewStructure s2(3, Mobius::identity(3),
                     {rf("t", 3), rf("0", 3), rf("0", 3), rf("1", 3), rf("0", 3), rf("1", 3)},
                     14);
    ModulusResult r2 = normalize_modulus(s2, 3);
    for (const auto& [target, reason] : r2.obstructions) CHECK(target % 3 != 0);
    for (int j = 4; j < 14; ++j) {
        if (j % 3 == 0) continue;
        bool listed = false;
        for (const auto& [target, reason] : r2.obstructions) listed = listed || target == j;
        if (!listed) CHECK(r2.out.conj_coeff(j).is_zero());
    }

    // d = 1 is the identity transform
    CHECK(normalize_modulus(s2, 1).out.to_json() == s2.to_json());
}

TEST_CASE("local height") {
    CHECK(local_height(ref3()) == Bound::exactly(1));
    SkewStructure s(5, Mobius::identity(5),
                    {rf("t", 5), rf("0", 5), rf("0", 5), rf("t^2", 5)}, 12);
    CHECK(local_height(s) == Bound::exactly(3));
    SkewStructure flat(3, Mobius::identity(3), {rf("t", 3)}, 16);
    CHECK(local_height(flat) == Bound::at_least(16));
    SkewStructure twisted(5, Mobius(5, 2, 0, 0, 1), {rf("2*t", 5)}, 8);
    CHECK_THROWS_AS(local_height(twisted), NotDefined);
}

TEST_CASE("d invariant") {
    // the reference structure commutes past every knowable order
    DInvariantResult base = d_invariant(ref3(), rf("t", 3));
    CHECK(base.d == Bound::at_least(16));
    CHECK(base.trail.empty());

    // finite case: slots 1 and 2 give d = 2 with no shift needed
    SkewStructure fin(3, Mobius::identity(3), {rf("t", 3), rf("1", 3), rf("1", 3)}, 12);
    DInvariantResult f = d_invariant(fin, rf("t", 3));
    CHECK(f.d == Bound::exactly(2));
    CHECK(fp_of(f.d.value - 2, 3) == 0);

    // the p-th power of the element first moves at d + (p-1) * height
    int first = 0;
    for (int m = 1; m < 12; ++m)
        if (!fin.delta(-1, m, rf("t^3", 3)).is_zero()) {
            first = m;
            break;
        }
    CHECK(first == 2 + (3 - 1) * 1);

    // center elements have no first index
    CHECK_THROWS_AS(d_invariant(ref3(), rf("2", 3)), NotDefined);
    SkewStructure pdiv(3, Mobius::identity(3),
                       {rf("t", 3), rf("0", 3), rf("0", 3), rf("1", 3)}, 12);
    CHECK_THROWS_AS(d_invariant(pdiv, rf("t", 3)), Unsupported);

    // invariants() packages the same data
    InvariantReport rep = invariants(fin);
    CHECK(rep.alpha_order == 1);
    CHECK(*rep.height == Bound::exactly(1));
    CHECK(*rep.d == Bound::exactly(2));
    nlohmann::json j = rep.to_json();
    CHECK(j["local_height"]["finite"] == 1);
    CHECK(j["d"]["finite"] == 2);
}

TEST_CASE("first index on perfect-power subfields") {
    // slot at p: the first index acting on t^(p^k) is p^k * p
    SkewStructure s(3, Mobius::identity(3),
                    {rf("t", 3), rf("0", 3), rf("0", 3), rf("1", 3)}, 16);
    auto first_moving = [&](const RatFunc& elem) {
        for (int m = 1; m < 16; ++m)
            if (!s.delta(1, m, elem).is_zero()) return m;
        return 0;
    };
    CHECK(first_moving(rf("t", 3)) == 3);
    CHECK(first_moving(rf("t^3", 3)) == 9);
}

TEST_CASE("derivation coefficient table") {
    SkewStructure s(5, Mobius::identity(5), {rf("t", 5), rf("1", 5)}, 12);
    CTable table = c_table(s, 1, 1, 2, 20, 17);
    CHECK(table.closed_form_ok);
    CHECK(table.sampling_ok);
    CHECK(table.rows.at(1).at(0) == rf("1", 5));  // c(n, j, 1) = delta_j(t)
    CHECK(table.rows.at(2).at(1) == rf("1", 5));  // (2!)^-1 * 1 * 2 = 1

    // diagonal vanishing pattern: zero iff one of n, n+j, ..., n+(k-1)j is
    SkewStructure s5(5, Mobius::identity(5), {rf("t", 5), rf("1", 5)}, 14);
    CTable deep = c_table(s5, 4, 1, 2, 5, 18);
    CHECK(deep.rows.at(2).at(1).is_zero()); // n=4, k=2 hits 4+1 = 5 = 0 mod 5
    CTable clean = c_table(s5, 1, 1, 4, 5, 19);
    for (int k = 1; k <= 4; ++k) CHECK_FALSE(clean.rows.at(k).at(static_cast<size_t>(k - 1)).is_zero());

    CHECK_THROWS_AS(c_table(s, 1, 1, 5, 5, 0), Unsupported);    // kmax past p-1
    CHECK_THROWS_AS(c_table(s, 1, 2, 2, 5, 0), InvalidIndex);   // wrong first index
    CHECK_THROWS_AS(c_table(s, 0, 1, 2, 5, 0), InvalidIndex);
}

TEST_CASE("level constants") {
    CHECK(level_constant(1, 2, 5).value == 1); // (1+1)/2! = 1
    CHECK(level_constant(1, 1, 7).value == 1); // empty product
    CHECK(level_constant(2, 2, 5).value == 4); // 3/2 = 3 * 3 = 9 = 4
    CHECK_THROWS_AS(level_constant(1, 5, 5), Unsupported);

    SkewStructure s(5, Mobius::identity(5), {rf("t", 5), rf("1", 5)}, 12);
    CHECK(check_level_constant(s, 1, 2, 10, 3));
    SkewStructure s2(5, Mobius::identity(5), {rf("t", 5), rf("0", 5), rf("2", 5)}, 12);
    CHECK(check_level_constant(s2, 2, 2, 10, 4));
}
