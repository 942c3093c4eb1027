// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface: compute pairings from JSON inputs, run the
// verification suites, scan for pairing-friendly parameters, inspect curves,
// and emit loop-length/timing comparisons.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hypair/json_io.hpp"
#include "hypair/verify.hpp"

namespace {

constexpr int kExitVerificationFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitMathError = 3;

hypair::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hypair::ParseError(path + ": cannot open file");
    hypair::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw hypair::ParseError(path + ": " + e.what());
    }
    return j;
}

void print_error(const std::string& code, const std::string& message) {
    hypair::json j;
    j["error"] = code;
    j["message"] = message;
    std::cerr << j.dump() << "\n";
}

std::vector<hypair::Int> parse_csv_ints(const std::string& csv) {
    std::vector<hypair::Int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.emplace_back(item);
    }
    return out;
}

struct CommonArgs {
    std::string curve_file;
    std::string r_str;
    std::uint64_t seed = 1;
};

hypair::PairingContext build_context(const CommonArgs& args) {
    hypair::CurveInput input = hypair::curve_from_json(load_json_file(args.curve_file));
    if (!args.r_str.empty()) input.r = hypair::Int(args.r_str);
    // the pairing-field modulus is always the canonical (seed-0) one so that
    // divisor files are interchangeable; --seed only drives sampling
    return hypair::context_from_curve(input, 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypair: genus-2 hyperelliptic pairing toolkit"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string d1_file, d2_file, pairing_name = "tate";
    std::string hv_s, hv_h, verc_h, verc_m, format = "json";
    int rate_i = 0, rate_j = 0, ate_j = 0;
    unsigned twist_e = 0, trials = 20;
    bool den_elim = false, debug_raw = false, dedupe = false, verc_auto = false;
    std::string p_min = "5", p_max = "13";
    unsigned max_k = 20, min_r_bits = 2;
    std::uint64_t sample_count = 0;

    auto add_curve_opts = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--curve", common.curve_file, "curve JSON file");
        if (required) opt->required();
        cmd->add_option("--r", common.r_str, "prime subgroup order (decimal)");
        cmd->add_option("--seed", common.seed, "deterministic RNG seed");
    };

    auto* pair_cmd = app.add_subcommand("pair", "evaluate one pairing on two divisors");
    add_curve_opts(pair_cmd);
    pair_cmd->add_option("--d1", d1_file, "first divisor JSON file")->required();
    pair_cmd->add_option("--d2", d2_file, "second divisor JSON file")->required();
    pair_cmd->add_option("--pairing", pairing_name,
                         "tate|weil|ate|ate_i|hv|vercauteren|rate|twisted_ate");
    pair_cmd->add_option("--hv-s", hv_s, "HV loop scalar s (decimal)");
    pair_cmd->add_option("--hv-h", hv_h, "HV coefficients h_0,h_1,... (CSV)");
    pair_cmd->add_option("--verc-h", verc_h, "Vercauteren digits h_0,h_1,... (CSV)");
    pair_cmd->add_option("--verc-m", verc_m, "Vercauteren multiplier m");
    pair_cmd->add_flag("--verc-auto", verc_auto,
                       "search for the shortest digit expansion instead of --verc-h/--verc-m");
    pair_cmd->add_option("--rate-i", rate_i, "R-ate index i");
    pair_cmd->add_option("--rate-j", rate_j, "R-ate index j");
    pair_cmd->add_option("--ate-j", ate_j, "ate_i index j");
    pair_cmd->add_option("--twist-e", twist_e, "twisted-ate exponent e (divides k)");
    pair_cmd->add_flag("--den-elim", den_elim, "denominator-eliminated Miller loop");
    pair_cmd->add_flag("--debug-raw-tate", debug_raw,
                       "emit the unexponentiated Tate coset value (defined mod r-th powers)");

    auto* verify_cmd = app.add_subcommand("verify", "run the bilinearity and identity suites");
    add_curve_opts(verify_cmd);
    verify_cmd->add_option("--trials", trials, "trials per property");

    auto* search_cmd = app.add_subcommand("search", "scan H=0 quintics for pairing-friendly data");
    search_cmd->add_option("--p-min", p_min, "smallest prime");
    search_cmd->add_option("--p-max", p_max, "largest prime");
    search_cmd->add_option("--max-k", max_k, "drop records with larger embedding degree");
    search_cmd->add_option("--min-r-bits", min_r_bits, "subgroup-size floor in bits");
    search_cmd->add_option("--sample", sample_count, "random subset size per prime (0 = all)");
    search_cmd->add_flag("--dedupe", dedupe, "one curve per affine-substitution orbit");
    search_cmd->add_option("--seed", common.seed, "deterministic RNG seed");
    search_cmd->add_option("--format", format, "json|csv");

    auto* info_cmd = app.add_subcommand("curve-info", "charpoly, #Jac, classification, candidates");
    add_curve_opts(info_cmd, true);

    auto* bench_cmd = app.add_subcommand("bench", "loop lengths, final-exp flags and timings");
    add_curve_opts(bench_cmd);
    bench_cmd->add_option("--trials", trials, "timed evaluations per pairing");
    bench_cmd->add_option("--format", format, "json|csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(pair_cmd)) {
            hypair::PairingContext ctx = build_context(common);
            hypair::ReducedDivisor da =
                hypair::divisor_from_json(ctx.lifted, load_json_file(d1_file));
            hypair::ReducedDivisor db =
                hypair::divisor_from_json(ctx.lifted, load_json_file(d2_file));
            hypair::DispatchParams params;
            params.options.denominator_elimination = den_elim;
            params.options.debug_raw_tate = debug_raw;
            if (!hv_s.empty() || !hv_h.empty()) {
                if (hv_s.empty() || hv_h.empty())
                    throw hypair::BadSpec("hv needs both --hv-s and --hv-h");
                params.hv_spec = hypair::HVSpec{hypair::Int(hv_s), parse_csv_ints(hv_h)};
            }
            if (verc_auto) {
                auto exp = hypair::shortest_vercauteren_expansion(ctx);
                params.vercauteren_h = exp.h;
                params.vercauteren_m = exp.m;
            } else if (!verc_h.empty()) {
                params.vercauteren_h = parse_csv_ints(verc_h);
                if (verc_m.empty()) throw hypair::BadSpec("vercauteren needs --verc-m");
                params.vercauteren_m = hypair::Int(verc_m);
            }
            if (rate_i > 0 || rate_j > 0)
                params.rate_spec = hypair::make_rate_spec(ctx, static_cast<unsigned>(rate_i),
                                                          static_cast<unsigned>(rate_j));
            if (ate_j > 0) params.ate_i_j = static_cast<unsigned>(ate_j);
            if (twist_e > 0) params.twist_e = twist_e;
            hypair::Rng rng(common.seed);
            hypair::PairingResult res =
                hypair::pairing_dispatch(ctx, pairing_name, da, db, params, rng);
            std::cout << hypair::pairing_result_to_json(res).dump() << "\n";
            return 0;
        }

        if (app.got_subcommand(verify_cmd)) {
            hypair::PairingContext ctx = build_context(common);
            hypair::VerifyOptions opts;
            opts.trials = trials;
            opts.seed = common.seed;
            hypair::VerifyReport rep = hypair::run_verification(ctx, opts, &std::cout);
            std::cout << "passed: " << rep.passed << " failed: " << rep.failed << "\n";
            return rep.all_passed() ? 0 : kExitVerificationFailure;
        }

        if (app.got_subcommand(search_cmd)) {
            hypair::SearchConfig cfg;
            cfg.p_min = hypair::Int(p_min);
            cfg.p_max = hypair::Int(p_max);
            cfg.max_k = max_k;
            cfg.min_r_bits = min_r_bits;
            cfg.dedupe = dedupe;
            cfg.seed = common.seed;
            if (sample_count > 0) {
                cfg.sample_all = false;
                cfg.sample_count = sample_count;
            }
            bool csv = format == "csv";
            if (csv) std::cout << hypair::record_csv_header() << "\n";
            hypair::search(
                cfg,
                [&](const hypair::CurveRecord& rec) {
                    std::cout << (csv ? hypair::record_to_csv(rec)
                                      : hypair::record_to_json(rec).dump())
                              << "\n";
                },
                [&](const std::string& note) { std::cerr << "# " << note << "\n"; });
            return 0;
        }

        if (app.got_subcommand(info_cmd)) {
            hypair::CurveInput input = hypair::curve_from_json(load_json_file(common.curve_file));
            hypair::CharPoly cp = hypair::frobenius_charpoly(input.curve);
            hypair::json j;
            j["curve"] = hypair::curve_to_json(input.curve, input.r);
            hypair::json coeffs = hypair::json::array();
            for (const auto& c : cp.c) coeffs.push_back(hypair::int_to_json(c));
            j["charpoly"] = coeffs;
            hypair::Int order = cp.eval(1);
            j["jac_order"] = hypair::int_to_json(order);
            j["class"] = hypair::to_string(hypair::classify(cp, hypair::Int(input.curve.base->p())));
            hypair::json cands = hypair::json::array();
            auto fac = hypair::factorize(order);
            if (fac.complete) {
                for (const auto& [prime, e] : fac.factors) {
                    (void)e;
                    if (input.curve.base->order() % prime == 0) continue;
                    hypair::json c;
                    c["r"] = hypair::int_to_json(prime);
                    c["k"] = hypair::embedding_degree(input.curve.base->order(), prime);
                    c["rho"] = hypair::rho_value(input.curve.genus, input.curve.base->order(), prime);
                    cands.push_back(c);
                }
            }
            j["candidates"] = cands;
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (app.got_subcommand(bench_cmd)) {
            hypair::PairingContext ctx = build_context(common);
            hypair::Rng rng(common.seed);
            hypair::ReducedDivisor g1 = hypair::sample_G1(ctx, rng);
            hypair::ReducedDivisor g2 = hypair::sample_G2(ctx, rng);
            hypair::ReducedDivisor t1 = hypair::sample_r_torsion(ctx, ctx.k, rng);
            hypair::ReducedDivisor t2 = hypair::sample_r_torsion(ctx, ctx.k, rng);
            hypair::DispatchParams params;
            params.ate_i_j = hypair::default_ate_i_index(ctx);
            if (ctx.k >= 3) params.rate_spec = hypair::default_rate_spec(ctx);
            params.twist_e = ctx.k % 2 == 0 ? ctx.k / 2 : ctx.k;
            {
                hypair::Int mr = 2 * ctx.r;
                std::vector<hypair::Int> digits;
                for (hypair::Int x = mr; x > 0; x /= ctx.q) digits.push_back(x % ctx.q);
                params.vercauteren_h = digits;
                params.vercauteren_m = 2;
            }
            params.hv_spec = hypair::random_hv_spec(ctx, rng);
            bool csv = format == "csv";
            if (csv) std::cout << "pairing,loop_bits,final_exp,wall_ms\n";
            for (const std::string name :
                 {"tate", "weil", "ate", "ate_i", "hv", "vercauteren", "rate", "twisted_ate"}) {
                if (name == "rate" && ctx.k < 3) continue;
                const auto& da = name == "twisted_ate" ? g1 : (name == "tate" || name == "weil") ? t1 : g2;
                const auto& db = name == "twisted_ate" ? g2 : (name == "tate" || name == "weil") ? t2 : g1;
                hypair::PairingResult res;
                auto start = std::chrono::steady_clock::now();
                unsigned done = 0;
                for (unsigned i = 0; i < trials; ++i) {
                    try {
                        res = hypair::pairing_dispatch(ctx, name, da, db, params, rng);
                        ++done;
                    } catch (const hypair::ZeroEncountered&) {
                    }
                }
                auto stop = std::chrono::steady_clock::now();
                double ms = std::chrono::duration<double, std::milli>(stop - start).count() /
                            std::max(1u, done);
                if (csv) {
                    std::cout << res.pairing << ',' << res.loop_bits << ',' << res.final_exp << ','
                              << ms << "\n";
                } else {
                    hypair::json j = hypair::pairing_result_to_json(res);
                    j.erase("value");
                    j["wall_ms"] = ms;
                    std::cout << j.dump() << "\n";
                }
            }
            return 0;
        }
    } catch (const hypair::ParseError& e) {
        print_error(e.code(), e.what());
        return kExitParseError;
    } catch (const hypair::Error& e) {
        print_error(e.code(), e.what());
        return kExitMathError;
    } catch (const std::exception& e) {
        print_error("InternalError", e.what());
        return kExitMathError;
    }
    return 0;
}
