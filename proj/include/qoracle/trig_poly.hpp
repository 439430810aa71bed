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

#include <cstdint>
#include <map>
#include <vector>

#include "qoracle/common.hpp"

namespace qoracle {

inline constexpr double kTrigPruneTol = 1e-12;
inline constexpr std::size_t kTrigTermBudget = 1000000;

/// Sparse multivariate trigonometric polynomial
///   T(phi_1..phi_D) = sum_j c_j exp(i (n_{j,1} phi_1 + ... + n_{j,D} phi_D))
/// over integer frequency vectors. Terms with |c| < 1e-12 are pruned.
struct TrigPoly {
    using Freq = std::vector<std::int32_t>;

    int var_count = 0;
    std::map<Freq, cxd> terms;

    static TrigPoly zero(int vars) {
        TrigPoly t;
        t.var_count = vars;
        return t;
    }

    static TrigPoly constant(int vars, cxd c) {
        TrigPoly t = zero(vars);
        if (std::abs(c) >= kTrigPruneTol) t.terms.emplace(Freq(vars, 0), c);
        return t;
    }

    /// max_j sum_k |n_{j,k}|; 0 for the empty polynomial.
    int degree() const {
        int deg = 0;
        for (const auto& [freq, c] : terms) {
            int l1 = 0;
            for (auto v : freq) l1 += std::abs(v);
            deg = std::max(deg, l1);
        }
        return deg;
    }

    std::size_t term_count() const { return terms.size(); }

    void prune() {
        for (auto it = terms.begin(); it != terms.end();) {
            if (std::abs(it->second) < kTrigPruneTol)
                it = terms.erase(it);
            else
                ++it;
        }
    }

    void check_budget() const {
        require(terms.size() <= kTrigTermBudget, "TrigPoly: term budget (10^6) exceeded");
    }
};

inline TrigPoly tp_add(const TrigPoly& a, const TrigPoly& b) {
    require(a.var_count == b.var_count, "tp_add: var_count mismatch");
    TrigPoly out = a;
    for (const auto& [freq, c] : b.terms) {
        auto [it, inserted] = out.terms.emplace(freq, c);
        if (!inserted) it->second += c;
    }
    out.prune();
    out.check_budget();
    return out;
}

inline TrigPoly tp_scale(const TrigPoly& a, cxd s) {
    TrigPoly out = TrigPoly::zero(a.var_count);
    if (std::abs(s) < kTrigPruneTol) return out;
    for (const auto& [freq, c] : a.terms) {
        cxd v = c * s;
        if (std::abs(v) >= kTrigPruneTol) out.terms.emplace(freq, v);
    }
    return out;
}

/// Multiply by exp(i * shift * phi_var); shift must be +1 or -1.
/// Shifting one component preserves the lexicographic key order, so the
/// result rebuilds in linear time.
inline TrigPoly tp_mul_monomial(const TrigPoly& a, int var, int shift) {
    require(var >= 0 && var < a.var_count, "tp_mul_monomial: variable index out of range");
    require(shift == 1 || shift == -1, "tp_mul_monomial: shift must be +1 or -1");
    TrigPoly out = TrigPoly::zero(a.var_count);
    for (const auto& [freq, c] : a.terms) {
        TrigPoly::Freq nf = freq;
        nf[var] += shift;
        out.terms.emplace_hint(out.terms.end(), std::move(nf), c);
    }
    return out;
}

inline cxd tp_evaluate(const TrigPoly& a, const std::vector<double>& phases) {
    require(static_cast<int>(phases.size()) == a.var_count, "tp_evaluate: phase vector length mismatch");
    cxd sum = 0.0;
    for (const auto& [freq, c] : a.terms) {
        double angle = 0.0;
        for (int k = 0; k < a.var_count; ++k)
            if (freq[k] != 0) angle += freq[k] * phases[k];
        sum += c * std::polar(1.0, angle);
    }
    return sum;
}

}  // namespace qoracle
