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

#include <optional>

#include "qoracle/circuit.hpp"
#include "qoracle/rng.hpp"

namespace qoracle {

struct OptimizerConfig {
    int restarts = 20;           // restart 0 starts from identity constants
    int max_iterations = 2000;   // coordinate sweeps per restart
    std::uint64_t master_seed = 42;
    double tolerance = 1e-8;     // stop when the surrogate improves less than this
    double sharpness = 50.0;     // softmax weighting toward the worst function
};

struct RestartSummary {
    std::uint64_t seed = 0;
    double final_error = 0.0;      // max operator-norm error over fs
    double final_surrogate = 0.0;  // soft-max of squared Frobenius distances
    int iterations = 0;
};

struct OptimizationResult {
    CircuitSpec best_circuit;
    double best_surrogate = 0.0;
    double best_error = 0.0;  // <= every per-restart final error
    std::vector<RestartSummary> restarts;
    std::vector<int> powers;
    std::uint64_t master_seed = 0;
};

namespace detail {

struct ProcrustesProblem {
    std::vector<CMatrix> targets;        // lifted Q^(2)_f
    std::vector<std::vector<CMatrix>> queries;  // per f, per slot: lifted (Q^(1)_f)^{p_k}
    Eigen::Index dim = 0;
    double sharpness = 50.0;

    std::size_t function_count() const { return targets.size(); }
    int slots() const { return queries.empty() ? 0 : static_cast<int>(queries[0].size()); }

    CMatrix circuit_matrix(const std::vector<CMatrix>& constants, std::size_t fi) const {
        CMatrix acc = constants[0];
        for (int k = 0; k < slots(); ++k) acc = constants[k + 1] * (queries[fi][k] * acc);
        return acc;
    }

    double true_error(const std::vector<CMatrix>& constants) const {
        double worst = 0.0;
        for (std::size_t fi = 0; fi < targets.size(); ++fi)
            worst = std::max(worst, op_norm(targets[fi] - circuit_matrix(constants, fi)));
        return worst;
    }

    /// Soft maximum of the squared Frobenius distances, plus their softmax
    /// weights (evaluated stably around the running maximum).
    std::pair<double, std::vector<double>> surrogate(const std::vector<CMatrix>& constants) const {
        std::vector<double> d(targets.size());
        double dmax = 0.0;
        for (std::size_t fi = 0; fi < targets.size(); ++fi) {
            d[fi] = (targets[fi] - circuit_matrix(constants, fi)).squaredNorm();
            dmax = std::max(dmax, d[fi]);
        }
        double z = 0.0;
        std::vector<double> w(targets.size());
        for (std::size_t fi = 0; fi < d.size(); ++fi) {
            w[fi] = std::exp(sharpness * (d[fi] - dmax));
            z += w[fi];
        }
        for (auto& x : w) x /= z;
        double lse = dmax + std::log(z / static_cast<double>(d.size())) / sharpness;
        return {lse, w};
    }
};

/// argmax_{U unitary} Re tr(G U), via the SVD polar factor.
inline CMatrix procrustes_maximizer(const CMatrix& g) {
    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixV() * svd.matrixU().adjoint();
}

struct RestartOutcome {
    std::vector<CMatrix> constants;
    double error = 0.0;
    double surrogate = 0.0;
    int iterations = 0;
};

inline RestartOutcome run_restart(const ProcrustesProblem& prob, std::vector<CMatrix> constants,
                                  const OptimizerConfig& cfg) {
    int slots = prob.slots();
    std::size_t nf = prob.function_count();
    auto [surr, weights] = prob.surrogate(constants);

    RestartOutcome best;
    best.constants = constants;
    best.surrogate = surr;
    best.error = prob.true_error(constants);

    for (int it = 0; it < cfg.max_iterations; ++it) {
        // suffix products B_k = U_S q_{S-1} ... U_{k+1} q_k (sweep-start constants)
        std::vector<std::vector<CMatrix>> suffix(nf, std::vector<CMatrix>(slots + 1));
        for (std::size_t fi = 0; fi < nf; ++fi) {
            suffix[fi][slots] = CMatrix::Identity(prob.dim, prob.dim);
            for (int k = slots - 1; k >= 0; --k)
                suffix[fi][k] = suffix[fi][k + 1] * constants[k + 1] * prob.queries[fi][k];
        }
        // left-to-right sweep; prefixes A_k pick up the fresh updates
        std::vector<CMatrix> prefix(nf, CMatrix::Identity(prob.dim, prob.dim));
        for (int k = 0; k <= slots; ++k) {
            // minimize sum_f w_f || T_f - B U A ||_F^2  <=>  maximize Re tr(G U)
            CMatrix g = CMatrix::Zero(prob.dim, prob.dim);
            for (std::size_t fi = 0; fi < nf; ++fi)
                g += weights[fi] * (prefix[fi] * (prob.targets[fi].adjoint() * suffix[fi][k]));
            constants[k] = procrustes_maximizer(g);
            if (k < slots)
                for (std::size_t fi = 0; fi < nf; ++fi) prefix[fi] = prob.queries[fi][k] * constants[k] * prefix[fi];
        }
        auto [next_surr, next_weights] = prob.surrogate(constants);
        double err = prob.true_error(constants);
        if (err < best.error) {
            best.error = err;
            best.surrogate = next_surr;
            best.constants = constants;
        }
        best.iterations = it + 1;
        if (it > 0 && surr - next_surr < cfg.tolerance) break;
        if (best.error < 1e-12) break;
        surr = next_surr;
        weights = std::move(next_weights);
    }
    return best;
}

}  // namespace detail

/// Search the N+1 interleaving constants minimizing the (soft-max weighted)
/// Frobenius distance to the target query, by cyclic orthogonal-Procrustes
/// updates: with all other constants fixed, the optimal U_k has the closed
/// form V W^H from the SVD of the weighted cross terms. Unitarity is exact
/// by construction and the run is deterministic given the seed.
inline OptimizationResult optimize_circuit(const OracleInstance& q1, const OracleInstance& q2, int n_queries,
                                           const std::vector<FunctionTable>& fs, const std::vector<int>& powers,
                                           const OptimizerConfig& cfg,
                                           const std::vector<CMatrix>* warm_start = nullptr) {
    require_input(!fs.empty(), "optimize_circuit: empty function set");
    require_input(static_cast<int>(powers.size()) == n_queries, "optimize_circuit: powers length must equal N");
    require_input(cfg.restarts >= 1, "optimize_circuit: restarts must be >= 1");
    int system_bits = std::max(q1.query_bits, q2.query_bits);
    require(system_bits <= 6, "optimize_circuit: system cap M <= 6 exceeded");
    Eigen::Index dim = Eigen::Index{1} << system_bits;

    detail::ProcrustesProblem prob;
    prob.dim = dim;
    prob.sharpness = cfg.sharpness;
    for (const auto& f : fs) {
        prob.targets.push_back(lift(q2.query(f), dim));
        std::vector<CMatrix> qs;
        CMatrix q = lift(q1.query(f), dim);
        CMatrix qi = q.adjoint();
        for (int p : powers) qs.push_back(p >= 0 ? q : qi);
        prob.queries.push_back(std::move(qs));
    }

    int total_runs = cfg.restarts + (warm_start ? 1 : 0);
    std::vector<detail::RestartOutcome> outcomes(total_runs);
    std::vector<std::uint64_t> seeds(total_runs);
    parallel_for(total_runs, [&](std::size_t r) {
        std::vector<CMatrix> init;
        if (warm_start && r == static_cast<std::size_t>(total_runs - 1)) {
            init = *warm_start;
            seeds[r] = cfg.master_seed;  // warm start carries no fresh entropy
        } else {
            seeds[r] = derive_seed(cfg.master_seed, "optimizer-restart", r);
            Rng rng(seeds[r]);
            for (int k = 0; k <= n_queries; ++k)
                init.push_back(r == 0 ? CMatrix::Identity(dim, dim) : haar_unitary(dim, rng));
        }
        require(static_cast<int>(init.size()) == n_queries + 1, "optimize_circuit: bad warm start width");
        outcomes[r] = detail::run_restart(prob, std::move(init), cfg);
    });

    OptimizationResult res;
    res.master_seed = cfg.master_seed;
    res.powers = powers;
    std::size_t best_r = 0;
    for (std::size_t r = 0; r < outcomes.size(); ++r) {
        res.restarts.push_back({seeds[r], outcomes[r].error, outcomes[r].surrogate, outcomes[r].iterations});
        if (outcomes[r].error < outcomes[best_r].error - 1e-15) best_r = r;
    }
    res.best_error = outcomes[best_r].error;
    res.best_surrogate = outcomes[best_r].surrogate;

    CircuitSpec c;
    c.system_bits = system_bits;
    c.oracle_slot = q1.id;
    c.simulates = q2.id;
    c.push_constant(outcomes[best_r].constants[0]);
    for (int k = 0; k < n_queries; ++k) {
        c.push_query(powers[k]);
        c.push_constant(outcomes[best_r].constants[k + 1]);
    }
    res.best_circuit = std::move(c);
    return res;
}

/// Best error over all query budgets up to N, trying the all-forward and the
/// alternating power patterns at each level, with each level warm-started
/// from the previous one (its constants plus an appended identity). The
/// floor is non-increasing in N by construction.
struct FloorResult {
    double floor = 0.0;
    std::vector<double> per_level;  // best error at each budget 0..N
    OptimizationResult best;
    int best_level = 0;
};

inline FloorResult error_floor(const OracleInstance& q1, const OracleInstance& q2, int n_queries,
                               const std::vector<FunctionTable>& fs, const OptimizerConfig& cfg) {
    require_input(n_queries >= 0, "error_floor: N must be >= 0");
    auto pattern = [](bool alternating, int len) {
        std::vector<int> p(len, +1);
        if (alternating)
            for (int k = 1; k < len; k += 2) p[k] = -1;
        return p;
    };

    FloorResult res;
    res.floor = std::numeric_limits<double>::infinity();
    std::vector<CMatrix> warm_plus, warm_alt;
    for (int level = 0; level <= n_queries; ++level) {
        double level_best = std::numeric_limits<double>::infinity();
        for (bool alternating : {false, true}) {
            if (level == 0 && alternating) continue;  // patterns coincide
            std::vector<CMatrix>& warm = alternating ? warm_alt : warm_plus;
            std::vector<CMatrix> padded;
            const std::vector<CMatrix>* warm_ptr = nullptr;
            if (level > 0 && !warm.empty()) {
                padded = warm;
                padded.push_back(CMatrix::Identity(padded[0].rows(), padded[0].cols()));
                warm_ptr = &padded;
            }
            auto out = optimize_circuit(q1, q2, level, fs, pattern(alternating, level), cfg, warm_ptr);
            std::vector<CMatrix> consts;
            for (const auto& g : out.best_circuit.gates)
                if (const auto* d = std::get_if<DenseGate>(&g)) consts.push_back(d->u);
            warm = std::move(consts);
            if (level == 0) warm_alt = warm_plus = warm;
            if (out.best_error < level_best) level_best = out.best_error;
            if (out.best_error < res.floor - 1e-15) {
                res.floor = out.best_error;
                res.best = std::move(out);
                res.best_level = level;
            }
        }
        res.per_level.push_back(std::min(level_best, res.floor));
    }
    return res;
}

}  // namespace qoracle
