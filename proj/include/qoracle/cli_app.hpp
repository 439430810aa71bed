// Copyright 2026 The qoracle authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "qoracle/acceptance.hpp"
#include "qoracle/degree.hpp"
#include "qoracle/version.hpp"

namespace qoracle::cli {

struct CommonOpts {
    std::string fn_path;
    std::string out_path;
    bool csv = false;
    std::uint64_t seed = 42;
    double tol = 1e-8;
};

struct OracleSelect {
    std::string kind = "std";
    int n = 1;
    int m = 1;
    long long d = 1;
    std::string glp_path;

    OracleInstance instance() const {
        OracleKind k = oracle_kind_from_string(kind);
        OracleParams params;
        params.d = d;
        if (k == OracleKind::generic_local_phase) {
            require_input(!glp_path.empty(), "glp oracle needs --glp <spec.json>");
            params.glp = glp_spec_from_json(load_json_file(glp_path));
        }
        return make_instance(k, n, m, params);
    }

    OracleInstance instance_for(const FunctionTable& f) const {
        OracleSelect sel = *this;
        sel.n = f.n;
        sel.m = f.m;
        return sel.instance();
    }

    json config() const {
        json j{{"kind", kind}, {"n", n}, {"m", m}};
        if (kind == "cp") j["d"] = d;
        if (!glp_path.empty()) j["glp"] = glp_path;
        return j;
    }
};

/// Wrap a payload in the result envelope and deliver it: every result embeds
/// the tool version, the resolved config, the seed, and the wall-clock
/// duration; only the payload is byte-reproducible across runs.
inline void emit_result(const CommonOpts& common, const std::string& command, json config, json payload,
                        double duration_ms,
                        const std::vector<std::vector<std::pair<std::string, std::string>>>* csv_records = nullptr) {
    json doc{{"meta",
              json{{"tool", kToolName},
                   {"version", kVersion},
                   {"command", command},
                   {"config", std::move(config)},
                   {"seed", common.seed},
                   {"duration_ms", duration_ms}}},
             {"payload", std::move(payload)}};
    std::string text = dump_json(doc);
    if (common.out_path.empty()) {
        std::cout << text << "\n";
    } else {
        atomic_write_file(common.out_path, text);
        std::cout << command << ": wrote " << common.out_path << "\n";
    }
    if (common.csv) {
        require_input(csv_records != nullptr, "--csv is not available for this command");
        require_input(!common.out_path.empty(), "--csv requires --out");
        atomic_write_file(common.out_path + ".csv", csv_from_records(*csv_records));
        std::cout << command << ": wrote " << common.out_path << ".csv\n";
    }
}

inline FunctionTable load_function(const std::string& path) {
    require_input(!path.empty(), "missing --fn <function.json>");
    return function_from_json(load_json_file(path));
}

inline std::vector<int> parse_powers(const std::string& text, int n_queries) {
    if (text.empty()) return std::vector<int>(n_queries, +1);
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok == "+1" || tok == "1")
            out.push_back(+1);
        else if (tok == "-1")
            out.push_back(-1);
        else
            throw input_error("bad --powers entry: " + tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    require_input(static_cast<int>(out.size()) == n_queries, "--powers length must equal --queries");
    return out;
}

/// Entry point shared by the binary and the in-process tests.
/// Exit codes: 0 success, 1 contract violation, 2 bad input.
inline int run_command(const std::vector<std::string>& args) {
    CLI::App app{"desk-scale laboratory for quantum oracle queries"};
    app.require_subcommand(1);

    CommonOpts common;
    OracleSelect ora, ora2;
    int p_bound = 0;
    int n_queries = 0;
    std::string circuit_path, poly_path, powers_text, fn2_path, fns_mode = "pair";
    double delta = 0.1, theta1 = 0.0, theta2 = 1.0, coeff_c = 1.0;
    std::string g_preset = "linear";
    bool perms_only = false, witness = false, floor_mode = false;
    int restarts = 20, iterations = 2000;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", common.out_path, "write the JSON result to this file (atomic)");
        cmd->add_flag("--csv", common.csv, "also write a flattened CSV next to --out");
        cmd->add_option("--seed", common.seed, "master seed (recorded in the result)");
        cmd->add_option("--tol", common.tol, "exactness threshold override");
    };
    auto add_oracle1 = [&](CLI::App* cmd, bool with_nm) {
        cmd->add_option("--kind", ora.kind, "oracle kind: std|cp|min|glp");
        if (with_nm) {
            cmd->add_option("--n", ora.n, "input bits");
            cmd->add_option("--m", ora.m, "output bits");
        }
        cmd->add_option("--d", ora.d, "complex phase degree");
        cmd->add_option("--glp", ora.glp_path, "generic local phase spec JSON");
    };
    auto add_oracle_pair = [&](CLI::App* cmd) {
        cmd->add_option("--kind1", ora.kind, "query oracle kind");
        cmd->add_option("--kind2", ora2.kind, "target oracle kind");
        cmd->add_option("--n", ora.n, "input bits");
        cmd->add_option("--m", ora.m, "output bits");
        cmd->add_option("--d1", ora.d, "complex phase degree of the query oracle");
        cmd->add_option("--d2", ora2.d, "complex phase degree of the target oracle");
        cmd->add_option("--glp1", ora.glp_path, "glp spec of the query oracle");
        cmd->add_option("--glp2", ora2.glp_path, "glp spec of the target oracle");
    };

    // oracle build | eig
    auto* oracle_cmd = app.add_subcommand("oracle", "construct oracle queries and their eigensystems");
    oracle_cmd->require_subcommand(1);
    auto* build_cmd = oracle_cmd->add_subcommand("build", "dense unitary of a query at f");
    build_cmd->add_option("--fn", common.fn_path, "function table JSON")->required();
    add_oracle1(build_cmd, false);
    add_common(build_cmd);
    auto* eig_cmd = oracle_cmd->add_subcommand("eig", "labeled analytic eigensystem of a query at f");
    eig_cmd->add_option("--fn", common.fn_path, "function table JSON")->required();
    add_oracle1(eig_cmd, false);
    add_common(eig_cmd);

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "decide nonentangled / basic / simple by enumeration");
    add_oracle1(classify_cmd, true);
    classify_cmd->add_flag("--perms-only", perms_only, "restrict the family to permutations");
    classify_cmd->add_flag("--witness", witness, "include witness bases (large)");
    add_common(classify_cmd);

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "constructive oracle-by-oracle simulations");
    simulate_cmd->require_subcommand(1);
    auto* mvs_cmd = simulate_cmd->add_subcommand("min-via-std", "standard queries acting as the minimal query");
    mvs_cmd->add_option("--fn", common.fn_path, "permutation table JSON")->required();
    mvs_cmd->add_option("--p-bound", p_bound, "orbit-length budget (default: the largest orbit)");
    add_common(mvs_cmd);
    auto* svm_cmd = simulate_cmd->add_subcommand("std-via-min", "two minimal queries acting as the standard query");
    svm_cmd->add_option("--n", ora.n, "register width")->required();
    add_common(svm_cmd);

    // degree trace
    auto* degree_cmd = app.add_subcommand("degree", "trigonometric degree bookkeeping");
    degree_cmd->require_subcommand(1);
    auto* trace_cmd = degree_cmd->add_subcommand("trace", "degree trace of a seeded random circuit");
    add_oracle1(trace_cmd, true);
    trace_cmd->add_option("--queries", n_queries, "number of oracle queries")->required();
    add_common(trace_cmd);

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "lower-bound evaluators");
    bound_cmd->require_subcommand(1);
    auto* lemma_cmd = bound_cmd->add_subcommand("lemma1", "single-function projection bound");
    lemma_cmd->add_option("--circuit", circuit_path, "circuit JSON")->required();
    lemma_cmd->add_option("--fn", common.fn_path, "function table JSON")->required();
    add_oracle_pair(lemma_cmd);
    add_common(lemma_cmd);
    auto* thm_cmd = bound_cmd->add_subcommand("mainthm", "pairwise adversary bound");
    thm_cmd->add_option("--circuit", circuit_path, "circuit JSON")->required();
    thm_cmd->add_option("--fn", common.fn_path, "first function (default: canonical probe pair)");
    thm_cmd->add_option("--fn2", fn2_path, "second function");
    add_oracle_pair(thm_cmd);
    add_common(thm_cmd);
    auto* glp_cmd = bound_cmd->add_subcommand("glp", "closed-form query bound for local phase oracles");
    glp_cmd->add_option("--m", ora.m, "output bits")->required();
    glp_cmd->add_option("--delta", delta, "approximation error target")->required();
    glp_cmd->add_option("--g", g_preset, "g preset: linear|sine");
    glp_cmd->add_option("--C", coeff_c, "coefficient bound C");
    glp_cmd->add_option("--queries", n_queries, "also report the minimum error at this query count");
    add_common(glp_cmd);
    auto* bern_cmd = bound_cmd->add_subcommand("bernstein", "difference-quotient check");
    bern_cmd->add_option("--poly", poly_path, "single-variable trig polynomial JSON")->required();
    bern_cmd->add_option("--theta1", theta1, "first evaluation point")->required();
    bern_cmd->add_option("--theta2", theta2, "second evaluation point")->required();
    add_common(bern_cmd);

    // optimize
    auto* optimize_cmd = app.add_subcommand("optimize", "search interleaving constants for the best approximation");
    add_oracle_pair(optimize_cmd);
    optimize_cmd->add_option("--queries", n_queries, "number of oracle queries")->required();
    optimize_cmd->add_option("--powers", powers_text, "comma-separated +1/-1 pattern (default all +1)");
    optimize_cmd->add_option("--fns", fns_mode, "function set: pair|perms|all (default pair)");
    optimize_cmd->add_option("--restarts", restarts, "restart count");
    optimize_cmd->add_option("--iterations", iterations, "sweep budget per restart");
    optimize_cmd->add_flag("--floor", floor_mode, "search all query budgets up to --queries");
    add_common(optimize_cmd);

    // suite
    auto* suite_cmd = app.add_subcommand("suite", "prepackaged experiment suites");
    suite_cmd->require_subcommand(1);
    auto* accept_cmd = suite_cmd->add_subcommand("acceptance", "run every shipped guarantee and report pass/fail");
    add_common(accept_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&t0] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    };

    try {
        if (build_cmd->parsed()) {
            FunctionTable f = load_function(common.fn_path);
            ora.n = f.n;
            ora.m = f.m;
            OracleInstance inst = ora.instance_for(f);
            QueryBuild qb = inst.build(f);
            json payload{{"kind", inst.id}, {"fn", to_json(f)}, {"dim", qb.matrix.rows()},
                         {"degenerate", qb.degenerate}, {"matrix", to_json(qb.matrix)}};
            emit_result(common, "oracle build", ora.config(), std::move(payload), elapsed_ms());
        } else if (eig_cmd->parsed()) {
            FunctionTable f = load_function(common.fn_path);
            ora.n = f.n;
            ora.m = f.m;
            OracleInstance inst = ora.instance_for(f);
            require_input(inst.has_analytic(), "oracle kind has no analytic eigensystem");
            EigenSystem sys = inst.analytic(f);
            json payload{{"kind", inst.id}, {"eigensystem", to_json(sys)},
                         {"phases", to_json(phases_of(sys))}};
            if (inst.id == "min") payload["orbits"] = to_json(orbit_decomposition(f));
            emit_result(common, "oracle eig", ora.config(), std::move(payload), elapsed_ms());
        } else if (classify_cmd->parsed()) {
            auto rep = classify_instance(ora.instance(), perms_only, common.seed, witness);
            json cfg = ora.config();
            cfg["perms_only"] = perms_only;
            emit_result(common, "classify", std::move(cfg), to_json(rep, witness), elapsed_ms());
        } else if (mvs_cmd->parsed()) {
            FunctionTable f = load_function(common.fn_path);
            int p = p_bound > 0 ? p_bound : std::max(1, orbit_decomposition(f).max_orbit_length());
            auto res = simulate_min_via_std(f, p);
            res.report.exact = res.report.max_error <= common.tol;
            json payload{{"report", to_json(res.report)}, {"p_bound", p},
                         {"system_bits", res.circuit.system_bits}, {"query_count", res.circuit.query_count()}};
            emit_result(common, "simulate min-via-std", json{{"fn", common.fn_path}, {"p_bound", p}},
                        std::move(payload), elapsed_ms());
        } else if (svm_cmd->parsed()) {
            int n = ora.n;
            auto c = minimal_simulates_standard(n);
            json payload{{"system_bits", c.system_bits}, {"query_count", c.query_count()}};
            if (n <= 2) {
                auto rep = approx_error(c, make_minimal_instance(n), make_standard_instance(n, n),
                                        enumerate_permutations(n));
                rep.exact = rep.max_error <= common.tol;
                payload["report"] = to_json(rep);
            } else {
                // exact classical check: every permutation for n = 3, seeded
                // samples beyond that
                auto minn = make_minimal_instance(n);
                auto stdn = make_standard_instance(n, n);
                std::vector<FunctionTable> perms;
                if (n == 3) {
                    perms = enumerate_permutations(n);
                } else {
                    for (int t = 0; t < 200; ++t) {
                        Rng rng(derive_seed(common.seed, "std-via-min", t));
                        perms.push_back(random_permutation(n, rng));
                    }
                }
                bool exact = true;
                for (const auto& f : perms) {
                    for (std::uint64_t z = 0; z < c.dim() && exact; ++z) {
                        SparseState out = apply_circuit_sparse(c, minn, f, SparseState::basis(z));
                        exact = out.amps.size() == 1 && out.amps[0].first == stdn.index_map(f, z, +1) &&
                                std::abs(out.amps[0].second - cxd(1, 0)) == 0.0;
                    }
                }
                payload["exact"] = exact;
                payload["permutations"] = perms.size();
                payload["exhaustive"] = (n == 3);
            }
            emit_result(common, "simulate std-via-min", json{{"n", n}}, std::move(payload), elapsed_ms());
        } else if (trace_cmd->parsed()) {
            OracleInstance inst = ora.instance();
            require_input(inst.fixed_eigenbasis, "degree trace needs a simple oracle (std|cp|glp)");
            Eigen::Index dim = Eigen::Index{1} << inst.query_bits;
            require_input(dim <= 16, "degree trace capped at dim 16");
            Rng rng(derive_seed(common.seed, "degree-trace"));
            CircuitSpec c;
            c.system_bits = inst.query_bits;
            c.oracle_slot = inst.id;
            c.push_constant(haar_unitary(dim, rng));
            for (int q = 0; q < n_queries; ++q) {
                c.push_query(rng.below(2) ? +1 : -1);
                c.push_constant(haar_unitary(dim, rng));
            }
            FunctionTable fref = random_function(ora.n, ora.m, rng);
            EigenSystem basis = inst.analytic(fref);
            CVector init = random_state(dim, rng);
            DegreeTrace trace;
            SymbolicState sym = symbolic_run(c, basis, init, &trace);
            double max_dev = 0.0;
            for (int ft = 0; ft < 5; ++ft) {
                FunctionTable f = random_function(ora.n, ora.m, rng);
                CVector numeric = basis.vectors.adjoint() * apply_circuit_state(c, inst, f, init);
                CVector symval = symbolic_evaluate(sym, phase_vector(inst.analytic(f)));
                max_dev = std::max(max_dev, (symval - numeric).cwiseAbs().maxCoeff());
            }
            json cfg = ora.config();
            cfg["queries"] = n_queries;
            json payload{{"degree_after_gates", trace.degree_after}, {"final_degree", sym.degree()},
                         {"query_count", trace.query_count}, {"terms", sym.term_count()},
                         {"degree_bound_held", sym.degree() <= n_queries}, {"numeric_check_deviation", max_dev}};
            emit_result(common, "degree trace", std::move(cfg), std::move(payload), elapsed_ms());
        } else if (lemma_cmd->parsed()) {
            CircuitSpec c = circuit_from_json(load_json_file(circuit_path));
            FunctionTable f = load_function(common.fn_path);
            OracleInstance q1 = ora.instance_for(f);
            ora2.n = f.n;
            ora2.m = f.m;
            auto rep = lemma1_bound(c, q1, ora2.instance(), f);
            if (ora.kind == "glp" && !ora.glp_path.empty() && rep.bound < 1.0) {
                auto spec = glp_spec_from_json(load_json_file(ora.glp_path));
                rep.analytic_n_min = glp_lower_bound(f.m, rep.bound, spec.derivative_bound, spec.coeff_bound);
            }
            json cfg{{"kind1", ora.kind}, {"kind2", ora2.kind}, {"circuit", circuit_path}, {"fn", common.fn_path}};
            emit_result(common, "bound lemma1", std::move(cfg), to_json(rep), elapsed_ms());
        } else if (thm_cmd->parsed()) {
            CircuitSpec c = circuit_from_json(load_json_file(circuit_path));
            std::optional<FunctionPair> pair;
            if (!common.fn_path.empty()) {
                require_input(!fn2_path.empty(), "bound mainthm needs both --fn and --fn2, or neither");
                pair.emplace(load_function(common.fn_path), load_function(fn2_path));
            } else {
                pair.emplace(adversary_pair(ora.n, ora.m));
            }
            ora.n = ora2.n = pair->f1.n;
            ora.m = ora2.m = pair->f1.m;
            auto rep = mainthm_bound(c, ora.instance(), ora2.instance(), *pair);
            if (ora.kind == "glp" && !ora.glp_path.empty() && rep.bound < 1.0) {
                auto spec = glp_spec_from_json(load_json_file(ora.glp_path));
                rep.analytic_n_min = glp_lower_bound(ora.m, rep.bound, spec.derivative_bound, spec.coeff_bound);
            }
            json cfg{{"kind1", ora.kind}, {"kind2", ora2.kind}, {"circuit", circuit_path},
                     {"n", ora.n}, {"m", ora.m}};
            emit_result(common, "bound mainthm", std::move(cfg), to_json(rep), elapsed_ms());
        } else if (glp_cmd->parsed()) {
            GPreset preset = g_preset == "sine" ? GPreset::sine : GPreset::linear;
            require_input(g_preset == "linear" || g_preset == "sine", "unknown --g preset");
            double b = GenericLocalPhaseSpec::preset_bound(preset);
            long long n_min = glp_lower_bound(ora.m, delta, b, coeff_c);
            json payload{{"N_min", n_min}, {"B", b}, {"C", coeff_c}, {"delta", delta}, {"m", ora.m}};
            if (n_queries > 0) payload["min_error_at_queries"] = glp_min_error(ora.m, n_queries, b, coeff_c);
            json cfg{{"m", ora.m}, {"delta", delta}, {"g", g_preset}, {"C", coeff_c}};
            emit_result(common, "bound glp", std::move(cfg), std::move(payload), elapsed_ms());
        } else if (bern_cmd->parsed()) {
            TrigPoly t = trig_poly_from_json(load_json_file(poly_path));
            double ratio = bernstein_ratio(t, theta1, theta2);
            json payload{{"ratio", ratio}, {"degree", t.degree()},
                         {"ratio_le_degree", ratio <= t.degree() + 1e-9}};
            json cfg{{"poly", poly_path}, {"theta1", theta1}, {"theta2", theta2}};
            emit_result(common, "bound bernstein", std::move(cfg), std::move(payload), elapsed_ms());
        } else if (optimize_cmd->parsed()) {
            OracleInstance q1 = ora.instance();
            ora2.n = ora.n;
            ora2.m = ora.m;
            OracleInstance q2 = ora2.instance();
            std::vector<FunctionTable> fs;
            if (fns_mode == "pair") {
                auto pair = adversary_pair(ora.n, ora.m);
                fs = {pair.f1, pair.f2};
            } else if (fns_mode == "perms") {
                fs = enumerate_permutations(ora.n);
            } else if (fns_mode == "all") {
                fs = enumerate_functions(ora.n, ora.m);
            } else {
                throw input_error("--fns must be pair|perms|all");
            }
            OptimizerConfig cfg;
            cfg.restarts = restarts;
            cfg.max_iterations = iterations;
            cfg.master_seed = common.seed;
            json config{{"kind1", ora.kind}, {"kind2", ora2.kind}, {"n", ora.n}, {"m", ora.m},
                        {"queries", n_queries}, {"fns", fns_mode}, {"restarts", restarts},
                        {"iterations", iterations}};
            json payload;
            OptimizationResult best;
            if (floor_mode) {
                auto res = error_floor(q1, q2, n_queries, fs, cfg);
                payload = json{{"floor", res.floor}, {"per_level", res.per_level}, {"best_level", res.best_level},
                               {"result", to_json(res.best)}};
                best = std::move(res.best);
            } else {
                best = optimize_circuit(q1, q2, n_queries, fs, parse_powers(powers_text, n_queries), cfg);
                payload = to_json(best);
            }
            std::vector<std::vector<std::pair<std::string, std::string>>> rows;
            for (const auto& r : best.restarts)
                rows.push_back({{"seed", std::to_string(r.seed)},
                                {"final_error", format_double(r.final_error)},
                                {"final_surrogate", format_double(r.final_surrogate)},
                                {"iterations", std::to_string(r.iterations)}});
            emit_result(common, "optimize", std::move(config), std::move(payload), elapsed_ms(), &rows);
        } else if (accept_cmd->parsed()) {
            auto results = run_acceptance(common.seed);
            bool all_pass = true;
            for (const auto& r : results) {
                std::printf("[%2d] %s  %-26s %s  (%.2f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
                            r.detail.c_str(), r.seconds);
                all_pass = all_pass && r.pass;
            }
            std::vector<std::vector<std::pair<std::string, std::string>>> rows;
            for (const auto& r : results)
                rows.push_back({{"id", std::to_string(r.id)},
                                {"name", r.name},
                                {"pass", r.pass ? "1" : "0"},
                                {"seconds", format_double(r.seconds)}});
            emit_result(common, "suite acceptance", json{{"seed", common.seed}},
                        acceptance_payload(results, common.seed), elapsed_ms(), &rows);
            return all_pass ? 0 : 1;
        }
        return 0;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const contract_error& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qoracle::cli
