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

#include <vector>

#include "qoracle/linalg.hpp"
#include "qoracle/oracles.hpp"
#include "qoracle/trig_poly.hpp"

namespace qoracle {

/// State of the quantum system written in the eigenbasis of one oracle query,
/// with each coefficient kept as a trigonometric polynomial of the query's
/// eigenphases. One variable per eigenvector label; applying a query shifts
/// the label's own variable, so the degree grows by at most one per query.
struct SymbolicState {
    std::vector<Label> basis_labels;  // ordering fixes the variable indices
    std::vector<TrigPoly> coeffs;     // one per basis label

    int var_count() const { return static_cast<int>(basis_labels.size()); }

    int degree() const {
        int deg = 0;
        for (const auto& c : coeffs) deg = std::max(deg, c.degree());
        return deg;
    }

    std::size_t term_count() const {
        std::size_t n = 0;
        for (const auto& c : coeffs) n += c.term_count();
        return n;
    }
};

/// Expand `state` in the given eigenbasis; all coefficients are degree-0
/// constants <v_j | state>.
inline SymbolicState symbolic_init(const CVector& state, const EigenSystem& eig) {
    require(state.size() == eig.dim, "symbolic_init: dimension mismatch");
    require(!eig.labels.empty(), "symbolic_init: eigensystem must carry labels");
    SymbolicState s;
    s.basis_labels = eig.labels;
    int vars = static_cast<int>(eig.labels.size());
    s.coeffs.reserve(vars);
    CVector amps = eig.vectors.adjoint() * state;
    for (Eigen::Index j = 0; j < eig.dim; ++j) s.coeffs.push_back(TrigPoly::constant(vars, amps(j)));
    return s;
}

/// Apply the oracle query (power +1) or its inverse (power -1): coefficient j
/// picks up exp(i * power * phi_j).
inline SymbolicState symbolic_apply_query(const SymbolicState& s, int power) {
    require(power == 1 || power == -1, "symbolic_apply_query: power must be +1 or -1");
    SymbolicState out;
    out.basis_labels = s.basis_labels;
    out.coeffs.reserve(s.coeffs.size());
    for (std::size_t j = 0; j < s.coeffs.size(); ++j)
        out.coeffs.push_back(tp_mul_monomial(s.coeffs[j], static_cast<int>(j), power));
    return out;
}

/// Apply a constant unitary expressed in the same eigenbasis ordering.
/// The degree never increases. Internally the coefficients are laid out on
/// their shared frequency support so the mixing is one dense product.
inline SymbolicState symbolic_apply_constant(const SymbolicState& s, const CMatrix& u_in_basis) {
    Eigen::Index dim = static_cast<Eigen::Index>(s.coeffs.size());
    require(u_in_basis.rows() == dim && u_in_basis.cols() == dim, "symbolic_apply_constant: dimension mismatch");
    int vars = s.var_count();

    // union of the supports (k-way merge of sorted maps)
    std::vector<const TrigPoly::Freq*> support;
    {
        std::vector<std::map<TrigPoly::Freq, cxd>::const_iterator> its, ends;
        for (const auto& c : s.coeffs) {
            its.push_back(c.terms.begin());
            ends.push_back(c.terms.end());
        }
        while (true) {
            const TrigPoly::Freq* best = nullptr;
            for (std::size_t k = 0; k < its.size(); ++k)
                if (its[k] != ends[k] && (!best || its[k]->first < *best)) best = &its[k]->first;
            if (!best) break;
            support.push_back(best);
            for (std::size_t k = 0; k < its.size(); ++k)
                if (its[k] != ends[k] && its[k]->first == *best) ++its[k];
        }
    }
    require(support.size() * static_cast<std::size_t>(dim) <= 4 * kTrigTermBudget,
            "symbolic_apply_constant: intermediate support exceeds the term budget");

    CMatrix coeffs = CMatrix::Zero(dim, static_cast<Eigen::Index>(support.size()));
    for (Eigen::Index k = 0; k < dim; ++k) {
        std::size_t col = 0;
        for (const auto& [freq, c] : s.coeffs[k].terms) {
            while (*support[col] < freq) ++col;
            coeffs(k, static_cast<Eigen::Index>(col)) = c;
        }
    }
    coeffs = u_in_basis * coeffs;

    SymbolicState out;
    out.basis_labels = s.basis_labels;
    out.coeffs.reserve(dim);
    std::size_t total = 0;
    for (Eigen::Index j = 0; j < dim; ++j) {
        TrigPoly acc = TrigPoly::zero(vars);
        for (std::size_t col = 0; col < support.size(); ++col) {
            cxd v = coeffs(j, static_cast<Eigen::Index>(col));
            if (std::abs(v) >= kTrigPruneTol) acc.terms.emplace_hint(acc.terms.end(), *support[col], v);
        }
        total += acc.term_count();
        require(total <= kTrigTermBudget, "symbolic_apply_constant: term budget (10^6) exceeded");
        out.coeffs.push_back(std::move(acc));
    }
    return out;
}

/// Evaluate all coefficients at the given phases (aligned with basis_labels);
/// returns the state in eigenbasis coordinates.
inline CVector symbolic_evaluate(const SymbolicState& s, const std::vector<double>& phases) {
    require(phases.size() == s.coeffs.size(), "symbolic_evaluate: phase count mismatch");
    CVector v(static_cast<Eigen::Index>(s.coeffs.size()));
    for (std::size_t j = 0; j < s.coeffs.size(); ++j) v(static_cast<Eigen::Index>(j)) = tp_evaluate(s.coeffs[j], phases);
    return v;
}

/// Phases of an eigensystem in basis-label order, for symbolic_evaluate.
inline std::vector<double> phase_vector(const EigenSystem& eig) {
    std::vector<double> out(eig.phases.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = canonical_phase(eig.phases[j]);
    return out;
}

}  // namespace qoracle
