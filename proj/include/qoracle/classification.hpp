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

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qoracle/oracles.hpp"
#include "qoracle/rng.hpp"

namespace qoracle {

inline constexpr double kCommutantSvTol = 1e-9;
inline constexpr double kStabilityTol = 1e-9;
inline constexpr double kOffDiagTol = 1e-9;
inline constexpr double kPhaseMatchTol = 1e-9;
inline constexpr double kDistinctEigTol = 1e-6;

/// Basis of { A : [U, A (x) I] = 0 } over front-register matrices A.
struct CommutantBasis {
    int front_bits = 0;
    std::vector<CMatrix> basis;  // Frobenius-orthonormal

    std::size_t dimension() const { return basis.size(); }
};

/// Nullspace of A -> U (A (x) I) - (A (x) I) U via singular-value
/// thresholding at 1e-9.
inline CommutantBasis product_commutant(const CMatrix& u, int front_bits) {
    Eigen::Index big = u.rows();
    Eigen::Index front = Eigen::Index{1} << front_bits;
    require(u.rows() == u.cols(), "product_commutant: square matrix required");
    require(big % front == 0 && is_power_of_two(big / front), "product_commutant: dim must be 2^{front+k}");
    Eigen::Index back = big / front;

    // columns indexed by (i, j) of A = E_ij
    CMatrix map(big * big, front * front);
    for (Eigen::Index i = 0; i < front; ++i) {
        for (Eigen::Index j = 0; j < front; ++j) {
            CMatrix a = CMatrix::Zero(front, front);
            a(i, j) = 1.0;
            CMatrix lifted = tensor(a, CMatrix::Identity(back, back));
            CMatrix comm = u * lifted - lifted * u;
            map.col(i * front + j) = Eigen::Map<CVector>(comm.data(), big * big);
        }
    }
    Eigen::JacobiSVD<CMatrix> svd(map, Eigen::ComputeThinV);
    CommutantBasis out;
    out.front_bits = front_bits;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        if (svd.singularValues()(k) <= kCommutantSvTol) {
            CVector v = svd.matrixV().col(k);
            CMatrix a(front, front);
            for (Eigen::Index i = 0; i < front; ++i)
                for (Eigen::Index j = 0; j < front; ++j) a(i, j) = v(i * front + j);
            out.basis.push_back(std::move(a));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Nonentangled detection: a front basis {|alpha_x>} with stable subspaces
// W_x exists iff the commutant contains a Hermitian element with 2^n
// distinct eigenvalues. A commutant smaller than 2^n rules that out; a
// failed randomized search on a large commutant stays inconclusive.
// ---------------------------------------------------------------------------

enum class Verdict { yes, no, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct NonentangledResult {
    Verdict verdict = Verdict::inconclusive;
    std::vector<CMatrix> witnesses;          // per f: columns |alpha_x> (when found)
    std::optional<std::size_t> failed_at;    // index into fs
    std::string note;
};

namespace detail {

/// Search the commutant for a Hermitian element with all-distinct
/// eigenvalues; return its eigenbasis.
inline std::optional<CMatrix> nondegenerate_witness(const CommutantBasis& cb, Rng& rng, int attempts) {
    Eigen::Index front = Eigen::Index{1} << cb.front_bits;
    for (int t = 0; t < attempts; ++t) {
        CMatrix h = CMatrix::Zero(front, front);
        for (const auto& a : cb.basis) {
            h += rng.normal() * (a + a.adjoint());
            h += rng.normal() * (cxd(0, 1) * (a - a.adjoint()));
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
        bool distinct = true;
        for (Eigen::Index j = 1; j < front; ++j)
            if (es.eigenvalues()(j) - es.eigenvalues()(j - 1) <= kDistinctEigTol) distinct = false;
        if (distinct) return es.eigenvectors();
    }
    return std::nullopt;
}

/// Largest out-of-subspace mass of U restricted to W_x = alpha_x (x) back.
inline double stability_defect(const CMatrix& u, const CMatrix& alpha, int front_bits) {
    Eigen::Index front = Eigen::Index{1} << front_bits;
    Eigen::Index back = u.rows() / front;
    double worst = 0.0;
    for (Eigen::Index x = 0; x < front; ++x) {
        CMatrix w = CMatrix::Zero(front * back, back);  // columns span W_x
        for (Eigen::Index r = 0; r < front; ++r)
            for (Eigen::Index b = 0; b < back; ++b) w(r * back + b, b) = alpha(r, x);
        CMatrix image = u * w;
        CMatrix residual = image - w * (w.adjoint() * image);
        worst = std::max(worst, op_norm(residual));
    }
    return worst;
}

}  // namespace detail

inline NonentangledResult detect_nonentangled(const OracleInstance& inst, const std::vector<FunctionTable>& fs,
                                              std::uint64_t seed = 42, int attempts = 64, bool keep_witnesses = false) {
    NonentangledResult res;
    std::uint64_t front_count = std::uint64_t{1} << inst.n;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        CMatrix q = inst.query(fs[i]);
        auto cb = product_commutant(q, inst.n);
        if (cb.dimension() < front_count) {
            res.verdict = Verdict::no;
            res.failed_at = i;
            res.note = "commutant dimension " + std::to_string(cb.dimension()) + " < 2^n";
            return res;
        }
        Rng rng(derive_seed(seed, "nonentangled-witness", i));
        auto alpha = detail::nondegenerate_witness(cb, rng, attempts);
        if (!alpha) {
            res.verdict = Verdict::inconclusive;
            res.failed_at = i;
            res.note = "no nondegenerate Hermitian commutant element found (degenerate search)";
            return res;
        }
        double defect = detail::stability_defect(q, *alpha, inst.n);
        if (defect > kStabilityTol) {
            res.verdict = Verdict::inconclusive;
            res.failed_at = i;
            res.note = "witness stability check failed (defect " + std::to_string(defect) + ")";
            return res;
        }
        if (keep_witnesses) res.witnesses.push_back(std::move(*alpha));
    }
    res.verdict = Verdict::yes;
    return res;
}

// ---------------------------------------------------------------------------
// Simple detection: is there one orthonormal basis diagonalizing every
// query? Decided by cluster refinement: start from the whole space, restrict
// each query to the current invariant subspaces, split along its
// eigenphase clusters, and fail as soon as a subspace is not invariant.
// ---------------------------------------------------------------------------

struct SimpleResult {
    bool simple = false;
    CMatrix common_basis;                    // columns, when simple
    std::optional<std::size_t> counterexample;  // f index breaking invariance
};

inline SimpleResult detect_simple(const OracleInstance& inst, const std::vector<FunctionTable>& fs) {
    require_input(!fs.empty(), "detect_simple: empty function family");
    Eigen::Index dim = inst.query(fs.front()).rows();
    std::vector<CMatrix> clusters{CMatrix::Identity(dim, dim)};

    for (std::size_t i = 0; i < fs.size(); ++i) {
        CMatrix q = inst.query(fs[i]);
        std::vector<CMatrix> next;
        for (const auto& sub : clusters) {
            Eigen::Index k = sub.cols();
            CMatrix qb = q * sub;
            CMatrix restricted = sub.adjoint() * qb;
            if (op_norm(qb - sub * restricted) > kOffDiagTol) {
                return SimpleResult{false, CMatrix(), i};
            }
            if (k == 1) {
                next.push_back(sub);
                continue;
            }
            Eigen::ComplexEigenSolver<CMatrix> es(restricted);
            require(es.info() == Eigen::Success, "detect_simple: eigensolver failed");
            struct Ent {
                double phase;
                Eigen::Index col;
            };
            std::vector<Ent> ents(k);
            for (Eigen::Index j = 0; j < k; ++j) {
                double t = canonical_phase(std::arg(es.eigenvalues()(j)));
                if (t > kTau - kPhaseClusterTol) t -= kTau;
                ents[j] = {t, j};
            }
            std::sort(ents.begin(), ents.end(),
                      [](const Ent& a, const Ent& b) { return a.phase < b.phase || (a.phase == b.phase && a.col < b.col); });
            Eigen::Index pos = 0;
            while (pos < k) {
                Eigen::Index end = pos + 1;
                while (end < k && ents[end].phase - ents[end - 1].phase <= kPhaseClusterTol) ++end;
                CMatrix block(k, end - pos);
                for (Eigen::Index t = 0; t < end - pos; ++t) block.col(t) = es.eigenvectors().col(ents[pos + t].col);
                Eigen::HouseholderQR<CMatrix> qr(block);
                CMatrix qq = qr.householderQ() * CMatrix::Identity(k, end - pos);
                next.push_back(sub * qq);
                pos = end;
            }
        }
        clusters = std::move(next);
    }

    SimpleResult res;
    res.common_basis.resize(dim, dim);
    Eigen::Index col = 0;
    for (const auto& sub : clusters)
        for (Eigen::Index j = 0; j < sub.cols(); ++j) res.common_basis.col(col++) = sub.col(j);
    // final verification: off-diagonal mass of every query in the basis
    for (std::size_t i = 0; i < fs.size(); ++i) {
        CMatrix d = res.common_basis.adjoint() * inst.query(fs[i]) * res.common_basis;
        d.diagonal().setZero();
        if (max_abs(d) > kOffDiagTol) return SimpleResult{false, CMatrix(), i};
    }
    res.simple = true;
    return res;
}

// ---------------------------------------------------------------------------
// Basic detection: after renumbering eigenvectors within each x-block, is
// every phase theta_{x,i}(f) a function of f(x) alone? Searched with the
// analytic labels first, then greedy maximum-overlap matching against the
// reference eigenvectors, then exhaustive permutations for blocks of at
// most 6 vectors. A failure is relative to this search order.
// ---------------------------------------------------------------------------

struct BasicResult {
    bool basic = false;
    // g_{x,i}: (label, f(x) value) -> phase
    std::map<Label, std::map<std::uint32_t, double>> g_tables;
    std::optional<std::size_t> counterexample;
    std::string note;
};

namespace detail {

/// Eigensystem with labels suitable for the basic test: first label entry is
/// the front index x. The minimal oracle gets the orbit renumbering.
inline EigenSystem basic_labeled_eigensystem(const OracleInstance& inst, const FunctionTable& f) {
    require(inst.has_analytic(), "detect_basic: oracle has no analytic eigensystem");
    if (inst.id == "min") return minimal_eigensystem_renumbered(f);
    return inst.analytic(f);
}

struct XBlock {
    std::vector<Eigen::Index> cols;  // eigenvector columns in this x-block
};

inline std::map<int, XBlock> group_by_x(const EigenSystem& sys) {
    std::map<int, XBlock> blocks;
    for (Eigen::Index j = 0; j < sys.dim; ++j) blocks[sys.labels[j][0]].cols.push_back(j);
    return blocks;
}

/// Greedy maximum-overlap assignment of block columns against the reference
/// block columns (ties broken by index): result[t] = column matching
/// reference slot t.
inline std::vector<Eigen::Index> greedy_overlap_match(const CMatrix& vecs, const CMatrix& ref_vecs,
                                                      const std::vector<Eigen::Index>& cols,
                                                      const std::vector<Eigen::Index>& ref_cols) {
    std::size_t k = cols.size();
    std::vector<std::vector<double>> overlap(k, std::vector<double>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            overlap[a][b] = std::abs(cxd(ref_vecs.col(ref_cols[a]).adjoint() * vecs.col(cols[b])));
    std::vector<bool> used_ref(k, false), used_col(k, false);
    std::vector<Eigen::Index> match(k, -1);
    for (std::size_t step = 0; step < k; ++step) {
        double best = -1.0;
        std::size_t ba = 0, bb = 0;
        for (std::size_t a = 0; a < k; ++a) {
            if (used_ref[a]) continue;
            for (std::size_t b = 0; b < k; ++b) {
                if (used_col[b]) continue;
                if (overlap[a][b] > best + 1e-12) {
                    best = overlap[a][b];
                    ba = a;
                    bb = b;
                }
            }
        }
        used_ref[ba] = true;
        used_col[bb] = true;
        match[ba] = cols[bb];
    }
    return match;
}

inline bool phases_match(double a, double b) { return phase_distance(a, b) <= kPhaseMatchTol; }

}  // namespace detail

inline BasicResult detect_basic(const OracleInstance& inst, const std::vector<FunctionTable>& fs) {
    require_input(!fs.empty(), "detect_basic: empty function family");
    BasicResult res;
    EigenSystem ref = detail::basic_labeled_eigensystem(inst, fs.front());
    auto ref_blocks = detail::group_by_x(ref);

    // accumulated tables: per reference slot (= renumbered label), the
    // phase pinned for each seen f(x) value
    std::map<Label, std::map<std::uint32_t, double>> tables;

    for (std::size_t i = 0; i < fs.size(); ++i) {
        const FunctionTable& f = fs[i];
        EigenSystem sys = detail::basic_labeled_eigensystem(inst, f);
        auto blocks = detail::group_by_x(sys);
        if (blocks.size() != ref_blocks.size()) {
            res.counterexample = i;
            res.note = "x-block structure varies across f";
            return res;
        }
        for (auto& [x, blk] : blocks) {
            auto rit = ref_blocks.find(x);
            if (rit == ref_blocks.end() || rit->second.cols.size() != blk.cols.size()) {
                res.counterexample = i;
                res.note = "x-block structure varies across f";
                return res;
            }
            const auto& ref_cols = rit->second.cols;
            std::uint32_t fx = f(static_cast<std::uint64_t>(x));
            std::size_t k = blk.cols.size();

            // candidate assignments: analytic label order, then overlap
            // matching, then exhaustive permutations (k <= 6)
            auto try_assignment = [&](const std::vector<Eigen::Index>& assign) {
                for (std::size_t t = 0; t < k; ++t) {
                    Label slot = ref.labels[ref_cols[t]];
                    auto table_it = tables.find(slot);
                    if (table_it == tables.end()) continue;
                    auto val_it = table_it->second.find(fx);
                    if (val_it == table_it->second.end()) continue;
                    if (!detail::phases_match(val_it->second, sys.phases[assign[t]])) return false;
                }
                return true;
            };
            auto commit = [&](const std::vector<Eigen::Index>& assign) {
                for (std::size_t t = 0; t < k; ++t) {
                    Label slot = ref.labels[ref_cols[t]];
                    tables[slot].emplace(fx, canonical_phase(sys.phases[assign[t]]));
                }
            };

            std::vector<Eigen::Index> direct(blk.cols.begin(), blk.cols.end());
            if (try_assignment(direct)) {
                commit(direct);
                continue;
            }
            auto matched = detail::greedy_overlap_match(sys.vectors, ref.vectors, blk.cols, ref_cols);
            if (try_assignment(matched)) {
                commit(matched);
                continue;
            }
            bool found = false;
            if (k <= 6) {
                std::vector<std::size_t> perm(k);
                for (std::size_t t = 0; t < k; ++t) perm[t] = t;
                do {
                    std::vector<Eigen::Index> assign(k);
                    for (std::size_t t = 0; t < k; ++t) assign[t] = blk.cols[perm[t]];
                    if (try_assignment(assign)) {
                        commit(assign);
                        found = true;
                        break;
                    }
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
            if (!found) {
                res.counterexample = i;
                res.note = "no renumbering reconciles the phase of block x=" + std::to_string(x) +
                           " at f(x)=" + std::to_string(fx);
                return res;
            }
        }
    }
    res.basic = true;
    res.g_tables = std::move(tables);
    return res;
}

// ---------------------------------------------------------------------------
// Report assembly.
// ---------------------------------------------------------------------------

struct ClassificationReport {
    int n = 0, m = 0;
    std::string oracle_id;
    std::uint64_t enumerated_function_count = 0;
    bool restricted_to_permutations = false;

    NonentangledResult nonentangled;
    SimpleResult common_eigenbasis;  // the raw shared-basis verdict
    BasicResult basic;
    bool simple = false;  // common eigenbasis AND basic (the hierarchy form)

    /// simple => basic => nonentangled must hold.
    void validate_hierarchy() const {
        if (simple) require(basic.basic, "ClassificationReport: simple without basic");
        if (basic.basic)
            require(nonentangled.verdict == Verdict::yes, "ClassificationReport: basic without nonentangled");
    }
};

/// Run all three detectors over the enumerated family (optionally only its
/// permutations).
inline ClassificationReport classify_instance(const OracleInstance& inst, bool permutations_only = false,
                                              std::uint64_t seed = 42, bool keep_witnesses = false) {
    std::vector<FunctionTable> fs;
    if (permutations_only) {
        require_input(inst.n == inst.m, "classify: permutation restriction needs n == m");
        require_input(inst.n <= 3, "classify: permutation enumeration capped at n <= 3");
        fs = enumerate_permutations(inst.n);
    } else {
        fs = enumerate_functions(inst.n, inst.m);
    }
    ClassificationReport rep;
    rep.n = inst.n;
    rep.m = inst.m;
    rep.oracle_id = inst.id;
    rep.enumerated_function_count = fs.size();
    rep.restricted_to_permutations = permutations_only;
    rep.nonentangled = detect_nonentangled(inst, fs, seed, 64, keep_witnesses);
    rep.common_eigenbasis = detect_simple(inst, fs);
    if (rep.nonentangled.verdict == Verdict::yes) rep.basic = detect_basic(inst, fs);
    rep.simple = rep.common_eigenbasis.simple && rep.basic.basic;
    rep.validate_hierarchy();
    return rep;
}

}  // namespace qoracle
