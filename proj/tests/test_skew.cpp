#include "doctest.h"

#include <random>

#include "skewforge/skew.hpp"

using namespace skewforge;

namespace {

RatFunc rf(const std::string& s, uint32_t p) { return RatFunc::parse(s, p); }

// z t z^-1 = t + z over F_3, the reference wild structure.
SkewStructure ref3(int precision = 16) {
    return SkewStructure(3, Mobius::identity(3), {rf("t", 3), rf("1", 3)}, precision);
}

RatFunc random_rf(std::mt19937_64& rng, uint32_t p, int max_deg) {
    auto poly = [&](bool nonzero) {
        std::vector<uint32_t> c(1 + rng() % static_cast<uint64_t>(max_deg + 1));
        for (auto& v : c) v = static_cast<uint32_t>(rng() % p);
        Poly f(p, std::move(c));
        if (nonzero && f.is_zero()) f = Poly::constant(p, 1);
        return f;
    };
    return RatFunc(poly(false), poly(true));
}

SkewSeries random_series(std::mt19937_64& rng, const SkewStructure& s, int len) {
    long long lead = static_cast<long long>(rng() % 5) - 2;
    std::vector<RatFunc> c;
    for (int k = 0; k < len; ++k) c.push_back(random_rf(rng, s.p(), 1));
    return SkewSeries::make(s.p(), lead, std::move(c));
}

} // namespace

TEST_CASE("structure validation") {
    CHECK_NOTHROW(ref3());
    SkewStructure tame(5, Mobius(5, 2, 0, 0, 1), {rf("2*t", 5)}, 8);
    CHECK(tame.alpha_order() == 4);
    CHECK_THROWS_AS(SkewStructure(3, Mobius::identity(3), {rf("t^2", 3), rf("1", 3)}, 16),
                    InconsistentStructure);
    CHECK_THROWS_AS(SkewStructure(4, Mobius::identity(2), {rf("t", 2)}, 8), BadModulus);
    CHECK_THROWS_AS(SkewStructure(3, Mobius::identity(3), {}, 8), InconsistentStructure);
    CHECK_THROWS_AS(SkewStructure(3, Mobius::identity(3),
                                  std::vector<RatFunc>(9, rf("0", 3)), 8),
                    InconsistentStructure);
    // missing tail entries are zero
    CHECK(ref3().conj_coeff(7).is_zero());
}

TEST_CASE("series window semantics") {
    SkewStructure s = ref3();
    SkewSeries a = SkewSeries::make(3, 0, {rf("0", 3), rf("t", 3), rf("0", 3)});
    CHECK(a.val() == 1);       // leading zero stripped
    CHECK(a.known_to() == 3);  // knowledge bound preserved
    CHECK(a.coeff(-5).is_zero());
    CHECK(a.coeff(2).is_zero());
    CHECK_THROWS_AS(a.coeff(3), PrecisionExceeded);

    SkewSeries z0 = SkewSeries::zero_to(3, 4);
    CHECK(z0.is_zero());
    CHECK_THROWS_AS(z0.val(), Error);
    CHECK(s.add(a, z0).known_to() == 3);
    CHECK(a.truncated(1).is_zero()); // nothing nonzero known below z^1
}

TEST_CASE("conjugation of the generator") {
    SkewStructure s = ref3();
    // (t+z)^2 = t^2 + 2t z + 2 z^2 over F_3
    SkewSeries sq = s.conj_pow(1, rf("t^2", 3), 4);
    CHECK(sq.coeff(0) == rf("t^2", 3));
    CHECK(sq.coeff(1) == rf("2*t", 3));
    CHECK(sq.coeff(2) == rf("2", 3));
    CHECK(sq.coeff(3).is_zero());

    // backward conjugation is exact: z^-1 t z = t + 2z
    SkewSeries back = s.conj_pow(-1, rf("t", 3), 4);
    CHECK(back.coeff(0) == rf("t", 3));
    CHECK(back.coeff(1) == rf("2", 3));
    CHECK(back.coeff(2).is_zero());
    CHECK(back.coeff(3).is_zero());

    // cube collapses in characteristic 3
    SkewSeries cube = s.conj_pow(1, rf("t^3", 3), 6);
    CHECK(cube.coeff(0) == rf("t^3", 3));
    for (int k = 1; k < 6; ++k) CHECK(cube.coeff(k).is_zero());

    CHECK_THROWS_AS(s.conj_pow(1, rf("t", 3), 0), EmptyPrecision);
}

TEST_CASE("delta coefficients") {
    SkewStructure s = ref3();
    CHECK(s.delta(1, 1, rf("t", 3)) == rf("1", 3));
    CHECK(s.delta(1, 2, rf("t^2", 3)) == rf("2", 3));
    CHECK(s.delta(-1, 1, rf("t", 3)) == rf("2", 3));
    CHECK(s.delta(0, 3, rf("t", 3)).is_zero()); // m = 0 convention
    CHECK_THROWS_AS(s.delta(1, 16, rf("t", 3)), PrecisionExceeded);
    CHECK_THROWS_AS(s.delta(1, 0, rf("t", 3)), InvalidIndex);
}

TEST_CASE("products and inverses") {
    SkewStructure s = ref3();
    // z * t = t z + z^2
    SkewSeries zt = s.mul(s.z_pow(1), s.lift(rf("t", 3)));
    CHECK(zt.val() == 1);
    CHECK(zt.coeff(1) == rf("t", 3));
    CHECK(zt.coeff(2) == rf("1", 3));

    SkewSeries a = SkewSeries::make(3, -1, {rf("t", 3), rf("1", 3), rf("t+1", 3)});
    CHECK(SkewSeries::agree(s.mul(a, s.lift(rf("1", 3))), a));

    // (t z^3) * t = t^2 z^3 since conjugation by z^3 fixes t here
    SkewSeries tz3 = SkewSeries::monomial(rf("t", 3), 3, 13);
    SkewSeries prod = s.mul(tz3, s.lift(rf("t", 3)));
    CHECK(prod.val() == 3);
    CHECK(prod.coeff(3) == rf("t^2", 3));
    for (long long k = 4; k < prod.known_to(); ++k) CHECK(prod.coeff(k).is_zero());

    // inverses: z^-1 z = 1 and the alternating geometric series
    SkewSeries zinv = s.inv(s.z_pow(1));
    CHECK(zinv.val() == -1);
    SkewSeries onez = s.add(s.lift(rf("1", 3)), s.z_pow(1));
    SkewSeries inv1 = s.inv(onez);
    for (long long k = 0; k < inv1.known_to(); ++k)
        CHECK(inv1.coeff(k) == (k % 2 == 0 ? rf("1", 3) : rf("2", 3)));
    CHECK(s.inv(s.lift(rf("t", 3))).coeff(0) == rf("(1)/(t)", 3));

    for (const SkewSeries& x : {zinv, inv1}) {
        SkewSeries check = s.mul(x, x == zinv ? s.z_pow(1) : onez);
        CHECK(check.coeff(0) == rf("1", 3));
        for (long long k = 1; k < check.known_to(); ++k) CHECK(check.coeff(k).is_zero());
    }
    CHECK_THROWS_AS(s.inv(SkewSeries::zero_to(3, 5)), DivisionByZero);
}

TEST_CASE("ring laws on random input") {
    std::mt19937_64 rng(2024);
    for (uint32_t p : {2u, 3u, 5u}) {
        SkewStructure s(p, Mobius::identity(p),
                        {rf("t", p), random_rf(rng, p, 1), random_rf(rng, p, 1)}, 10);
        for (int c = 0; c < 40; ++c) {
            SkewSeries a = random_series(rng, s, 3);
            SkewSeries b = random_series(rng, s, 3);
            SkewSeries d = random_series(rng, s, 3);
            CHECK(SkewSeries::agree(s.mul(s.mul(a, b), d), s.mul(a, s.mul(b, d))));
            // distributivity
            CHECK(SkewSeries::agree(s.mul(a, s.add(b, d)), s.add(s.mul(a, b), s.mul(a, d))));
            // valuations
            if (!a.is_zero() && !b.is_zero()) {
                CHECK(s.mul(a, b).val() == a.val() + b.val());
                SkewSeries sum = s.add(a, b);
                if (!sum.is_zero()) CHECK(sum.val() >= std::min(a.val(), b.val()));
                if (a.val() != b.val()) CHECK(sum.val() == std::min(a.val(), b.val()));
            }
        }
        // conjugation is a ring homomorphism in every exponent
        for (int c = 0; c < 25; ++c) {
            RatFunc f = random_rf(rng, p, 2), g = random_rf(rng, p, 2);
            long long m = static_cast<long long>(rng() % 7) - 3;
            SkewSeries lhs = s.conj_pow(m, f * g, 8);
            SkewSeries rhs = s.mul(s.conj_pow(m, f, 8), s.conj_pow(m, g, 8));
            CHECK(SkewSeries::agree(lhs, rhs));
            CHECK(SkewSeries::agree(s.conj_pow(m, f + g, 8),
                                    s.add(s.conj_pow(m, f, 8), s.conj_pow(m, g, 8))));
            // inverse conjugation composes to the identity
            SkewSeries round = s.conj_pow_series(-m, s.conj_pow(m, f, 8));
            CHECK(SkewSeries::agree(round, s.lift(f)));
        }
    }
}

TEST_CASE("identity checks report both sides") {
    SkewStructure s = ref3();
    RatFunc t = rf("t", 3);
    // delta_2(t*t) = 2 decomposes as delta_1(t) * (2 delta_1)(t)
    CheckResult fly = s.check_product_rule(t, t, 1, 2);
    CHECK(fly.ok);
    CHECK(fly.entries.size() == 2); // twisted + binomial (alpha = id)
    CHECK(fly.entries[0].lhs == rf("2", 3));

    CheckResult tower = s.check_conj_tower(t, 2, 1);
    CHECK(tower.ok);
    CHECK(s.delta(2, 1, t) == rf("2", 3));

    CheckResult sigma = s.check_sigma_expansion(t, t, 2);
    CHECK(sigma.ok);
    CHECK(sigma.entries[0].lhs == rf("2", 3));

    // m = 0 degenerates to 0 = 0
    CHECK(s.check_product_rule(t, t, 0, 2).ok);
}

TEST_CASE("structure files round-trip") {
    nlohmann::json j = nlohmann::json::parse(
        R"({"p":3, "alpha":{"matrix":[[1,0],[0,1]]}, "precision":16, "conj":["t","1"]})");
    SkewStructure s = SkewStructure::from_json(j);
    CHECK(s.precision() == 16);
    CHECK(s.conj_coeff(1) == rf("1", 3));
    // parse -> print -> parse is the identity, and printing is idempotent
    nlohmann::json printed = s.to_json();
    SkewStructure s2 = SkewStructure::from_json(printed);
    CHECK(printed.dump() == s2.to_json().dump());
    CHECK(printed["conj"] == nlohmann::json({"t", "1"}));

    CHECK_THROWS_AS(SkewStructure::from_json(nlohmann::json::parse(R"({"p":3})")), ParseError);
}
