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

#include <cmath>
#include <optional>

#include "qoracle/circuit.hpp"
#include "qoracle/trig_poly.hpp"

namespace qoracle {

/// Two functions of equal shape, the adversary's probe pair.
struct FunctionPair {
    FunctionTable f1, f2;

    FunctionPair(FunctionTable a, FunctionTable b) : f1(std::move(a)), f2(std::move(b)) {
        require_input(f1.n == f2.n && f1.m == f2.m, "FunctionPair: shapes must match");
    }
};

/// The probe pair differing only at x = 0: f1(0) = 2^{m-1}, f2(0) =
/// 2^{m-1} + 1 (mod 2^m; the pair degenerates at m = 1 where f2 == 0).
inline FunctionPair adversary_pair(int n, int m) {
    require_input(m >= 1, "adversary_pair: m must be >= 1");
    std::uint32_t half = std::uint32_t{1} << (m - 1);
    FunctionTable f1 = FunctionTable::constant(n, m, 0);
    FunctionTable f2 = f1;
    f1.values[0] = half;
    f2.values[0] = static_cast<std::uint32_t>((half + 1ull) % (std::uint64_t{1} << m));
    return FunctionPair(std::move(f1), std::move(f2));
}

/// Evaluated lower-bound quantities with the witnessing eigenvector label.
struct BoundReport {
    double bound = 0.0;                       // in [0, 2]
    Label witness{0, 0};
    int query_count = 0;
    std::vector<double> per_f_errors;         // operator-norm circuit errors
    std::optional<long long> analytic_n_min;  // closed-form query bound, when applicable
};

/// Numeric values of the projection coefficients T^{x,i}_{x',i'}: the matrix
/// V^dagger C_f V where V holds the reference eigenvectors (columns, label
/// order) and C_f is the instantiated circuit.
inline CMatrix projection_coefficients(const CircuitSpec& c, const OracleInstance& q1, const FunctionTable& f,
                                       const EigenSystem& reference_eig) {
    require(reference_eig.dim == static_cast<Eigen::Index>(c.dim()), "projection_coefficients: basis dim mismatch");
    CMatrix u = apply_circuit(c, q1, f);
    return reference_eig.vectors.adjoint() * u * reference_eig.vectors;
}

/// Analytic eigensystem of an oracle instance lifted to the circuit width.
inline EigenSystem reference_eigensystem(const OracleInstance& inst, const FunctionTable& f, int system_bits) {
    require(inst.has_analytic(), "reference_eigensystem: oracle has no analytic eigensystem");
    return lift_eigensystem(inst.analytic(f), Eigen::Index{1} << system_bits);
}

/// How far the circuit must miss Q^(2)_f: the largest gap between a target
/// eigenvalue and the matching diagonal projection coefficient, evaluated in
/// the eigenbasis of Q^(2)_f itself. Always a valid lower bound on the
/// operator-norm error at f.
inline BoundReport lemma1_bound(const CircuitSpec& c, const OracleInstance& q1, const OracleInstance& q2,
                                const FunctionTable& f) {
    EigenSystem eig2 = reference_eigensystem(q2, f, c.system_bits);
    CMatrix t = projection_coefficients(c, q1, f, eig2);
    BoundReport rep;
    rep.query_count = c.query_count();
    for (Eigen::Index j = 0; j < eig2.dim; ++j) {
        double gap = std::abs(std::polar(1.0, eig2.phases[j]) - t(j, j));
        if (gap > rep.bound) {
            rep.bound = gap;
            rep.witness = eig2.labels.empty() ? Label{static_cast<int>(j), 0} : eig2.labels[j];
        }
    }
    rep.per_f_errors = approx_error(c, q1, q2, {f}).per_f_errors;
    return rep;
}

/// The pairwise adversary bound: half the largest gap between the target
/// eigenvalue movement across (f1, f2) and the movement the circuit's
/// projection coefficient can produce. The circuit error must exceed this
/// at f1 or at f2. All projections live in the eigenbasis of Q^(2)_{f1};
/// for a simple target the cross term collapses to the f2 eigenvalue.
inline BoundReport mainthm_bound(const CircuitSpec& c, const OracleInstance& q1, const OracleInstance& q2,
                                 const FunctionPair& pair) {
    EigenSystem eig1 = reference_eigensystem(q2, pair.f1, c.system_bits);
    CMatrix t_f1 = projection_coefficients(c, q1, pair.f1, eig1);
    CMatrix t_f2 = projection_coefficients(c, q1, pair.f2, eig1);

    CVector target_f2(eig1.dim);
    if (q2.fixed_eigenbasis) {
        EigenSystem eig2 = reference_eigensystem(q2, pair.f2, c.system_bits);
        for (Eigen::Index j = 0; j < eig1.dim; ++j) target_f2(j) = std::polar(1.0, eig2.phases[j]);
    } else {
        CMatrix q2_f2 = lift(q2.query(pair.f2), static_cast<Eigen::Index>(c.dim()));
        CMatrix proj = eig1.vectors.adjoint() * q2_f2 * eig1.vectors;
        target_f2 = proj.diagonal();
    }

    BoundReport rep;
    rep.query_count = c.query_count();
    for (Eigen::Index j = 0; j < eig1.dim; ++j) {
        double eig_gap = std::abs(std::polar(1.0, eig1.phases[j]) - target_f2(j));
        double coeff_gap = std::abs(t_f1(j, j) - t_f2(j, j));
        double val = 0.5 * std::abs(eig_gap - coeff_gap);
        if (val > rep.bound) {
            rep.bound = val;
            rep.witness = eig1.labels.empty() ? Label{static_cast<int>(j), 0} : eig1.labels[j];
        }
    }
    rep.per_f_errors = approx_error(c, q1, q2, {pair.f1, pair.f2}).per_f_errors;
    return rep;
}

/// Sweep the pairwise bound over a caller-supplied pair set (the full
/// product over all function pairs is infeasible beyond the smallest
/// instances); returns the largest bound found.
inline BoundReport mainthm_sweep(const CircuitSpec& c, const OracleInstance& q1, const OracleInstance& q2,
                                 const std::vector<FunctionPair>& pairs) {
    require_input(!pairs.empty(), "mainthm_sweep: empty pair set");
    BoundReport best;
    bool first = true;
    for (const auto& pair : pairs) {
        BoundReport rep = mainthm_bound(c, q1, q2, pair);
        if (first || rep.bound > best.bound) {
            best = std::move(rep);
            first = false;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Single-variable machinery: the difference-quotient form of Bernstein's
// inequality, |T(a) - T(b)| / |a - b| <= deg T for sup-normalized T.
// ---------------------------------------------------------------------------

inline cxd tp_evaluate1(const TrigPoly& t, double theta) {
    require(t.var_count == 1, "bernstein: single-variable polynomial required");
    return tp_evaluate(t, {theta});
}

/// Dense-grid check of sup |T| over [-pi, pi].
inline double tp_grid_sup(const TrigPoly& t, int samples = 4096) {
    double sup = 0.0;
    for (int k = 0; k < samples; ++k) {
        double theta = -kPi + kTau * static_cast<double>(k) / samples;
        sup = std::max(sup, std::abs(tp_evaluate1(t, theta)));
    }
    return sup;
}

/// Accurate sup norm: dense grid plus golden-section refinement around the
/// leading local maxima of |T|.
inline double tp_sup_norm(const TrigPoly& t, int samples = 8192) {
    std::vector<double> vals(samples);
    for (int k = 0; k < samples; ++k)
        vals[k] = std::abs(tp_evaluate1(t, -kPi + kTau * k / samples));
    double best = 0.0;
    double step = kTau / samples;
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int k = 0; k < samples; ++k) {
        double prev = vals[(k + samples - 1) % samples], next = vals[(k + 1) % samples];
        if (vals[k] < prev || vals[k] < next) continue;  // refine local maxima only
        double lo = -kPi + step * (k - 1), hi = -kPi + step * (k + 1);
        double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
        double f1 = std::abs(tp_evaluate1(t, x1)), f2 = std::abs(tp_evaluate1(t, x2));
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + golden * (hi - lo);
                f2 = std::abs(tp_evaluate1(t, x2));
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - golden * (hi - lo);
                f1 = std::abs(tp_evaluate1(t, x1));
            }
        }
        best = std::max({best, f1, f2, vals[k]});
    }
    return best;
}

/// |T(theta1) - T(theta2)| / |theta1 - theta2| for a sup-normalized T; the
/// value never exceeds deg T. The sup condition is checked by dense sampling
/// at 4096 points.
inline double bernstein_ratio(const TrigPoly& t, double theta1, double theta2) {
    require(theta1 != theta2, "bernstein_ratio: theta1 must differ from theta2");
    require(tp_grid_sup(t) <= 1.0 + 1e-9, "bernstein_ratio: sup |T| exceeds 1");
    return std::abs(tp_evaluate1(t, theta1) - tp_evaluate1(t, theta2)) / std::abs(theta1 - theta2);
}

// ---------------------------------------------------------------------------
// Closed forms for the generic-local-phase vs standard comparison.
// ---------------------------------------------------------------------------

/// Minimum number of generic-local-phase queries needed to approximate the
/// standard oracle up to delta: ceil(2^{m+1} (1 - delta) / (B C)), and at
/// least one query whenever the bound is positive (delta < 1).
inline long long glp_lower_bound(int m, double delta, double b, double c) {
    require_input(m >= 1, "glp_lower_bound: m must be >= 1");
    require_input(delta >= 0.0 && delta < 1.0, "glp_lower_bound: delta must be in [0, 1)");
    require_input(b > 0.0 && c > 0.0, "glp_lower_bound: B and C must be positive");
    double raw = std::pow(2.0, m + 1) * (1.0 - delta) / (b * c);
    long long n = static_cast<long long>(std::ceil(raw));
    return std::max<long long>(n, 1);
}

/// Minimum achievable error of an N-query circuit against the probe pair:
/// max(0, 1 - B C N / 2^{m+1}).
inline double glp_min_error(int m, long long n_queries, double b, double c) {
    require_input(m >= 1, "glp_min_error: m must be >= 1");
    require_input(n_queries >= 0, "glp_min_error: N must be >= 0");
    return std::max(0.0, 1.0 - b * c * static_cast<double>(n_queries) / std::pow(2.0, m + 1));
}

/// |e^{i theta(f1)} - e^{i theta(f2)}| at the witness label (0, 2^{m-1}) of
/// the standard oracle, for the canonical probe pair.
inline double adversary_pair_eigen_gap(int n, int m) {
    require_input(m >= 2, "adversary_pair_eigen_gap: needs m >= 2 (the pair degenerates at m = 1)");
    FunctionPair pair = adversary_pair(n, m);
    auto s1 = standard_eigensystem(pair.f1);
    auto s2 = standard_eigensystem(pair.f2);
    Label witness{0, static_cast<int>(std::uint32_t{1} << (m - 1))};
    Eigen::Index j1 = s1.index_of(witness), j2 = s2.index_of(witness);
    return std::abs(std::polar(1.0, s1.phases[j1]) - std::polar(1.0, s2.phases[j2]));
}

}  // namespace qoracle
