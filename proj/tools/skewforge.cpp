// skewforge — batch CLI over the skew Laurent series engine.
//
// Exit codes: 0 all checks passed, 1 a verified property failed, 2 usage or
// input error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "skewforge/verify.hpp"

namespace {

using namespace skewforge;

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON in \"") + path + "\": " + e.what());
    }
}

int cmd_verify(const SuiteParams& params) {
    Report report = run_suite(params);
    std::cout << report.to_json().dump(2) << "\n";
    return report.status == "pass" ? 0 : 1;
}

int cmd_invariants(const std::string& file) {
    SkewStructure s = load_structure(read_json_file(file));
    std::cout << invariants(s).to_json().dump(2) << "\n";
    return 0;
}

int cmd_normalize(const std::string& file, bool galois, int modulus, const std::string& out_path) {
    SkewStructure s = load_structure(read_json_file(file));
    nlohmann::json report;
    nlohmann::json out_structure;
    if (galois) {
        GaloisResult res = normalize_galois(s);
        report["mode"] = "galois";
        report["complete"] = res.complete;
        report["normalized_below"] = res.normalized_below;
        report["steps"] = nlohmann::json::array();
        for (const auto& step : res.steps)
            report["steps"].push_back({{"j", step.j}, {"b", step.b.str()}});
        out_structure = res.out.to_json();
    } else {
        ModulusResult res = normalize_modulus(s, modulus);
        report["mode"] = "modulus";
        report["modulus"] = modulus;
        report["obstructions"] = nlohmann::json::array();
        for (const auto& [target, reason] : res.obstructions)
            report["obstructions"].push_back({{"target", target}, {"reason", reason}});
        out_structure = res.out.to_json();
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot write \"" + out_path + "\"");
        out << out_structure.dump(2) << "\n";
        report["out"] = out_path;
    } else {
        report["structure"] = out_structure;
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_delta(const std::string& file, long long m, int max_i, const std::string& elem) {
    SkewStructure s = load_structure(read_json_file(file));
    RatFunc a = RatFunc::parse(elem, s.p());
    nlohmann::json values = nlohmann::json::object();
    for (int i = 1; i <= max_i; ++i) values[std::to_string(i)] = s.delta(m, i, a).str();
    nlohmann::json j{{"m", m}, {"elem", a.str()}, {"values", values}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_demo_norm(uint32_t p, int r, int n, long long target) {
    if (target == 0) throw NoSolution("norm preimages of 0 are not searched");
    FiniteFieldExt ext(p, r, n);
    Poly witness = ext.solve_norm(target);
    Poly check = ext.norm(witness);
    nlohmann::json j{{"p", p},
                     {"r", r},
                     {"n", n},
                     {"modulus", ext.modulus().str()},
                     {"target", fp_of(target, p)},
                     {"witness", witness.str()},
                     {"norm_of_witness", check.str()},
                     {"ok", check == Poly::constant(p, target)}};
    std::cout << j.dump(2) << "\n";
    return j["ok"].get<bool>() ? 0 : 1;
}

int cmd_demo_height_growth(uint32_t p, int i, int precision) {
    // d(t) strictly exceeds the local height on the shipped wild structures.
    if (i % static_cast<int>(p) == 0) throw Unsupported("height must be coprime to p");
    SkewStructure s = make_preset(Preset::wild_level(p, i, RatFunc::one(p), precision));
    InvariantReport rep = invariants(s);
    nlohmann::json j = rep.to_json();
    bool ok = false;
    if (rep.d) ok = rep.d->value > rep.height->value;
    j["d_exceeds_height"] = ok;
    std::cout << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_dump_spoly(int i, int k) {
    FreePoly def = s_poly(i, k, SPolyMode::Definition);
    FreePoly rec = s_poly(i, k, SPolyMode::Recursion);
    nlohmann::json j{{"i", i},
                     {"k", k},
                     {"definition", def.str()},
                     {"recursion", rec.str()},
                     {"equal", def == rec},
                     {"terms", def.term_count()}};
    std::cout << j.dump(2) << "\n";
    return def == rec ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact skew Laurent series engine over F_p(t)"};
    app.require_subcommand(1);

    SuiteParams params;
    auto* verify = app.add_subcommand("verify", "run a randomized identity suite");
    verify->add_option("--suite", params.suite, "one of: flyii triviall ooo ozamene lemma5 svva vtorinv posledn")
        ->required();
    verify->add_option("--p", params.p, "prime modulus")->default_val(3);
    verify->add_option("--precision", params.precision, "series precision")->default_val(12);
    verify->add_option("--seed", params.seed, "RNG seed (reports are reproducible per seed)")
        ->required();
    verify->add_option("--cases", params.cases, "number of randomized cases")->default_val(100);

    std::string file, out_path, elem = "t";
    auto* inv = app.add_subcommand("invariants", "height and d-invariant of a structure file");
    inv->add_option("file", file, "structure JSON")->required();

    bool galois = false;
    int modulus = 0;
    auto* norm = app.add_subcommand("normalize", "remove slots by parameter changes");
    norm->add_option("file", file, "structure JSON")->required();
    norm->add_flag("--galois", galois, "clear every slot not divisible by ord(alpha)");
    norm->add_option("--modulus", modulus, "clear every slot not divisible by this");
    norm->add_option("--out", out_path, "write the resulting structure here");

    long long m = 1;
    int max_i = 8;
    auto* delta = app.add_subcommand("delta", "tabulate the conjugation coefficients of an element");
    delta->add_option("file", file, "structure JSON")->required();
    delta->add_option("--m", m, "conjugation exponent")->default_val(1);
    delta->add_option("--max-i", max_i, "largest index to print")->default_val(8);
    delta->add_option("--elem", elem, "element in the rational-function grammar")->default_val("t");

    auto* demo = app.add_subcommand("demo", "worked demonstrations");
    demo->require_subcommand(1);
    uint32_t dp = 3;
    int dr = 1, dn = 2, di = 1, dprec = 16;
    long long target = 1;
    auto* demo_norm = demo->add_subcommand("norm", "solve a finite-field norm equation");
    demo_norm->add_option("--p", dp, "prime")->default_val(3);
    demo_norm->add_option("--r", dr, "base field degree over F_p")->default_val(1);
    demo_norm->add_option("--n", dn, "extension degree")->default_val(2);
    demo_norm->add_option("--target", target, "base-field target")->required();
    auto* demo_growth = demo->add_subcommand("posledn", "height growth of the d-invariant");
    demo_growth->add_option("--p", dp, "prime")->default_val(3);
    demo_growth->add_option("--i", di, "local height of the built structure")->default_val(1);
    demo_growth->add_option("--precision", dprec, "series precision")->default_val(16);

    int si = 1, sk = 0;
    auto* spoly = app.add_subcommand("dump-spoly", "print an S-polynomial both ways");
    spoly->add_option("--i", si, "total degree")->required();
    spoly->add_option("--k", sk, "number of d letters")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) return cmd_verify(params);
        if (*inv) return cmd_invariants(file);
        if (*norm) {
            if (galois == (modulus > 0)) {
                std::cerr << "normalize wants exactly one of --galois / --modulus\n";
                return 2;
            }
            return cmd_normalize(file, galois, modulus, out_path);
        }
        if (*delta) return cmd_delta(file, m, max_i, elem);
        if (*demo_norm) return cmd_demo_norm(dp, dr, dn, target);
        if (*demo_growth) return cmd_demo_height_growth(dp, di, dprec);
        if (*spoly) return cmd_dump_spoly(si, sk);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const skewforge::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
