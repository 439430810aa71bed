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

#include "helpers.hpp"
#include "qoracle/bounds.hpp"
#include "qoracle/optimizer.hpp"

using namespace qoracle;

TEST_CASE("optimizer reproduces an exact self-simulation") {
    auto stdi = make_standard_instance(1, 1);
    OptimizerConfig cfg;
    cfg.restarts = 4;
    cfg.max_iterations = 200;
    auto fs = enumerate_functions(1, 1);
    auto res = optimize_circuit(stdi, stdi, 1, fs, {+1}, cfg);
    REQUIRE(res.best_error <= 1e-6);
    for (const auto& r : res.restarts) REQUIRE(res.best_error <= r.final_error + 1e-15);
}

TEST_CASE("optimizer finds the two-query minimal-to-standard construction") {
    auto min1 = make_minimal_instance(1);
    auto std1 = make_standard_instance(1, 1);
    OptimizerConfig cfg;  // defaults: 20 restarts, 2000 iterations, seed 42
    auto perms = enumerate_permutations(1);
    auto res = optimize_circuit(min1, std1, 2, perms, {+1, -1}, cfg);
    REQUIRE(res.best_error <= 1e-6);
}

TEST_CASE("optimizer cannot beat the analytic floor for local phase queries") {
    auto glp = make_glp_instance(1, 3, GenericLocalPhaseSpec::diagonal(1, 1.0));
    auto stdi = make_standard_instance(1, 3);
    auto pair = adversary_pair(1, 3);
    OptimizerConfig cfg;
    cfg.restarts = 6;
    cfg.max_iterations = 400;
    auto res = optimize_circuit(glp, stdi, 1, {pair.f1, pair.f2}, {+1}, cfg);
    double floor = glp_min_error(3, 1, kTau, 1.0);
    REQUIRE(res.best_error >= floor - 0.02);

    // the returned circuit can never beat its own pairwise bound
    auto thm = mainthm_bound(res.best_circuit, glp, stdi, pair);
    double worst = std::max(thm.per_f_errors[0], thm.per_f_errors[1]);
    REQUIRE(worst >= thm.bound - 1e-6);
    REQUIRE(res.best_error >= thm.bound - 1e-6);
}

TEST_CASE("optimizer is deterministic") {
    auto min1 = make_minimal_instance(1);
    auto std1 = make_standard_instance(1, 1);
    OptimizerConfig cfg;
    cfg.restarts = 3;
    cfg.max_iterations = 60;
    auto perms = enumerate_permutations(1);
    auto a = optimize_circuit(min1, std1, 1, perms, {+1}, cfg);
    auto b = optimize_circuit(min1, std1, 1, perms, {+1}, cfg);
    REQUIRE(a.best_error == b.best_error);
    REQUIRE(std::abs(a.best_surrogate - b.best_surrogate) <= 1e-12);
    for (std::size_t r = 0; r < a.restarts.size(); ++r) {
        REQUIRE(a.restarts[r].seed == b.restarts[r].seed);
        REQUIRE(a.restarts[r].final_error == b.restarts[r].final_error);
    }
}

TEST_CASE("restart merge is order-free") {
    auto min1 = make_minimal_instance(1);
    auto std1 = make_standard_instance(1, 1);
    OptimizerConfig cfg;
    cfg.restarts = 5;
    cfg.max_iterations = 50;
    auto perms = enumerate_permutations(1);
    auto res = optimize_circuit(min1, std1, 1, perms, {+1}, cfg);
    double min_err = std::numeric_limits<double>::infinity();
    for (const auto& r : res.restarts) min_err = std::min(min_err, r.final_error);
    std::vector<RestartSummary> shuffled(res.restarts.rbegin(), res.restarts.rend());
    double min_err2 = std::numeric_limits<double>::infinity();
    for (const auto& r : shuffled) min_err2 = std::min(min_err2, r.final_error);
    REQUIRE(min_err == min_err2);
    REQUIRE(res.best_error == min_err);
}

TEST_CASE("error_floor with zero queries cannot track a varying family") {
    auto cp = make_complex_phase_instance(1, 2, 1);
    auto fs = enumerate_functions(1, 2);
    OptimizerConfig cfg;
    cfg.restarts = 3;
    cfg.max_iterations = 50;
    auto res = error_floor(cp, cp, 0, fs, cfg);

    double spread = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j)
            spread = std::max(spread, op_norm(build_complex_phase(fs[i], 1) - build_complex_phase(fs[j], 1)));
    REQUIRE(res.floor >= 0.5 * spread - 1e-6);
}

TEST_CASE("error_floor is monotone and reaches exact simulations") {
    auto min1 = make_minimal_instance(1);
    auto std1 = make_standard_instance(1, 1);
    OptimizerConfig cfg;
    cfg.restarts = 8;
    cfg.max_iterations = 300;
    auto perms = enumerate_permutations(1);
    auto res = error_floor(min1, std1, 2, perms, cfg);
    REQUIRE(res.per_level.size() == 3);
    for (std::size_t l = 1; l < res.per_level.size(); ++l)
        REQUIRE(res.per_level[l] <= res.per_level[l - 1] + 1e-9);
    REQUIRE(res.floor <= 1e-6);
    REQUIRE(res.best_level == 2);
    REQUIRE(res.best.best_circuit.query_count() == 2);
}
