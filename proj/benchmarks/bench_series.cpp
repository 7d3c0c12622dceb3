#include <benchmark/benchmark.h>

#include <random>

#include "skewforge/transforms.hpp"
#include "skewforge/algebras.hpp"

using namespace skewforge;

namespace {

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

SkewStructure wild(uint32_t p, int precision) {
    return make_preset(Preset::wild_level(p, 1, RatFunc::one(p), precision));
}

void BM_SkewMul(benchmark::State& state) {
    int prec = static_cast<int>(state.range(0));
    SkewStructure s = wild(5, prec);
    std::mt19937_64 rng(1);
    std::vector<RatFunc> ca, cb;
    for (int k = 0; k < prec; ++k) {
        ca.push_back(random_rf(rng, 5, 1));
        cb.push_back(random_rf(rng, 5, 1));
    }
    SkewSeries a = SkewSeries::make(5, 0, ca);
    SkewSeries b = SkewSeries::make(5, 0, cb);
    for (auto _ : state) benchmark::DoNotOptimize(s.mul(a, b));
}
BENCHMARK(BM_SkewMul)->Arg(8)->Arg(12)->Arg(16);

void BM_ConjBack(benchmark::State& state) {
    // cold-cache backward conjugation, the triangular solve path
    int prec = static_cast<int>(state.range(0));
    for (auto _ : state) {
        SkewStructure s = wild(5, prec);
        benchmark::DoNotOptimize(s.conj_pow(-2, RatFunc::parse("(t+1)/(t)", 5), prec));
    }
}
BENCHMARK(BM_ConjBack)->Arg(8)->Arg(12);

void BM_ProductRuleCheck(benchmark::State& state) {
    SkewStructure s = wild(5, 12);
    RatFunc a = RatFunc::parse("(t^2+1)/(t)", 5);
    RatFunc b = RatFunc::parse("t+2", 5);
    for (auto _ : state) benchmark::DoNotOptimize(s.check_product_rule(a, b, -2, 6));
}
BENCHMARK(BM_ProductRuleCheck);

void BM_NormalizeGalois(benchmark::State& state) {
    std::mt19937_64 rng(7);
    for (auto _ : state) {
        state.PauseTiming();
        std::vector<RatFunc> conj(12, RatFunc::zero(5));
        Mobius alpha(5, 2, 0, 0, 1);
        conj[0] = alpha.image_of_t();
        for (int k = 1; k <= 5; ++k) conj[static_cast<size_t>(k)] = random_rf(rng, 5, 1);
        SkewStructure s(5, alpha, std::move(conj), 12);
        state.ResumeTiming();
        benchmark::DoNotOptimize(normalize_galois(s));
    }
}
BENCHMARK(BM_NormalizeGalois);

void BM_RatFuncArith(benchmark::State& state) {
    std::mt19937_64 rng(3);
    RatFunc a = random_rf(rng, 7, 12), b = random_rf(rng, 7, 12);
    for (auto _ : state) benchmark::DoNotOptimize((a * b) + a / b);
}
BENCHMARK(BM_RatFuncArith);

} // namespace

BENCHMARK_MAIN();
