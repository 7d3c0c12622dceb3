#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "skewforge/algebras.hpp"

namespace skewforge {

// Test-only instrumentation point: applied to engine-side values (with the
// series index they came from) before comparison, so fault injection and
// shrinking can be exercised without touching the engine.
using FaultHook = std::function<RatFunc(const RatFunc&, int)>;

struct SuiteParams {
    std::string suite;
    uint32_t p = 3;
    int precision = 12;
    uint64_t seed = 0;
    int cases = 100;
    int threads = 0; // 0: SKEWFORGE_THREADS or a hardware-derived default
};

struct Failure {
    int case_index = 0;
    nlohmann::json inputs;
    std::string lhs;
    std::string rhs;
    std::string tag;
    bool flaky = false;
    std::optional<nlohmann::json> second;  // outcome of the reproduction run
    std::optional<nlohmann::json> shrunk;  // minimal failing case, when shrinkable
};

struct Report {
    std::string suite;
    std::string status = "pass"; // pass | fail
    int cases_run = 0;
    std::vector<Failure> failures;
    double timing_ms = 0.0;

    nlohmann::json to_json(bool with_timing = true) const;
};

extern const std::vector<std::string> kSuiteNames;

int resolve_threads(int requested);

// Deterministic per-case RNG stream.
std::mt19937_64 case_rng(uint64_t seed, uint64_t index);

RatFunc random_ratfunc(std::mt19937_64& rng, uint32_t p, int max_deg, bool nonzero = false);

// Index-th automorphism of the requested order in a fixed enumeration of
// PGL_2(F_p) representatives.
Mobius mobius_of_order(uint32_t p, int n, uint64_t index);

// Random alpha = id structure: slot `height` nonzero, higher slots mixed.
SkewStructure random_id_structure(std::mt19937_64& rng, uint32_t p, int precision, int height);

Report run_suite(const SuiteParams& params, const FaultHook& hook = nullptr);

} // namespace skewforge
