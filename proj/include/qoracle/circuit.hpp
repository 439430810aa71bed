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
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qoracle/linalg.hpp"
#include "qoracle/oracles.hpp"

namespace qoracle {

// Registers are ordered front (high bits) to back (low bits); oracle queries
// always act on the front query_bits. Circuits that move data to the front
// do so with explicit permutation constants.

inline constexpr int kMaxStateBits = 24;

/// Oracle query slot, power +1 or -1. Instantiated at apply time.
struct QueryGate {
    int power = 1;
};

/// Constant unitary on the full system.
struct DenseGate {
    CMatrix u;
};

/// Constant unitary on the front `bits` qubits (u has dim 2^bits).
struct FrontGate {
    int bits = 0;
    CMatrix u;
};

/// Classical reversible constant: a bijection of basis indices.
struct PermGate {
    std::string desc;
    std::function<std::uint64_t(std::uint64_t)> fwd;
    std::function<std::uint64_t(std::uint64_t)> inv;
};

/// Diagonal constant exp(i * phase(z)) keyed on the basis index.
struct DiagGate {
    std::string desc;
    std::function<double(std::uint64_t)> phase;
};

using Gate = std::variant<QueryGate, DenseGate, FrontGate, PermGate, DiagGate>;

/// Alternating sequence of constants and (inverse) oracle queries on a
/// system of `system_bits` qubits. Gates apply in list order.
struct CircuitSpec {
    int system_bits = 0;
    std::vector<Gate> gates;
    std::string oracle_slot;  // oracle id the Query gates call
    std::string simulates;    // oracle id this circuit implements, if any

    std::uint64_t dim() const { return std::uint64_t{1} << system_bits; }

    int query_count() const {
        int n = 0;
        for (const auto& g : gates)
            if (std::holds_alternative<QueryGate>(g)) ++n;
        return n;
    }

    void push_constant(CMatrix u) { gates.push_back(DenseGate{std::move(u)}); }
    void push_query(int power) { gates.push_back(QueryGate{power}); }
};

inline Gate invert_gate(const Gate& g) {
    if (const auto* q = std::get_if<QueryGate>(&g)) return QueryGate{-q->power};
    if (const auto* d = std::get_if<DenseGate>(&g)) return DenseGate{d->u.adjoint()};
    if (const auto* fr = std::get_if<FrontGate>(&g)) return FrontGate{fr->bits, fr->u.adjoint()};
    if (const auto* p = std::get_if<PermGate>(&g)) return PermGate{p->desc + "^-1", p->inv, p->fwd};
    const auto& di = std::get<DiagGate>(g);
    auto ph = di.phase;
    return DiagGate{di.desc + "^-1", [ph](std::uint64_t z) { return -ph(z); }};
}

/// Reverse the gate order and invert every gate; applying both yields I.
inline CircuitSpec circuit_inverse(const CircuitSpec& c) {
    CircuitSpec out;
    out.system_bits = c.system_bits;
    out.oracle_slot = c.oracle_slot;
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) out.gates.push_back(invert_gate(*it));
    return out;
}

// ---------------------------------------------------------------------------
// Dense state-vector application.
// ---------------------------------------------------------------------------

/// Apply a unitary on the front k qubits of an M-qubit state.
inline void apply_front_unitary(CVector& state, const CMatrix& u, int front_bits, int system_bits) {
    require(u.rows() == (Eigen::Index{1} << front_bits), "apply_front_unitary: gate dim mismatch");
    require(front_bits <= system_bits, "apply_front_unitary: gate wider than system");
    std::uint64_t rest = std::uint64_t{1} << (system_bits - front_bits);
    Eigen::Index fd = Eigen::Index{1} << front_bits;
    CVector col(fd);
    for (std::uint64_t b = 0; b < rest; ++b) {
        for (Eigen::Index a = 0; a < fd; ++a) col(a) = state(static_cast<Eigen::Index>(a * rest + b));
        CVector out = u * col;
        for (Eigen::Index a = 0; a < fd; ++a) state(static_cast<Eigen::Index>(a * rest + b)) = out(a);
    }
}

inline void apply_gate_state(CVector& state, const Gate& gate, const OracleInstance& inst, const FunctionTable& f,
                             int system_bits) {
    std::uint64_t dim = std::uint64_t{1} << system_bits;
    require(state.size() == static_cast<Eigen::Index>(dim), "apply_gate_state: state dim mismatch");
    if (const auto* q = std::get_if<QueryGate>(&gate)) {
        require(inst.query_bits <= system_bits, "apply_gate_state: query does not fit the system");
        int back = system_bits - inst.query_bits;
        std::uint64_t back_mask = (std::uint64_t{1} << back) - 1;
        if (inst.action == QueryAction::classical) {
            CVector out = CVector::Zero(state.size());
            for (std::uint64_t z = 0; z < dim; ++z) {
                std::uint64_t a = z >> back;
                std::uint64_t zp = (inst.index_map(f, a, q->power) << back) | (z & back_mask);
                out(static_cast<Eigen::Index>(zp)) = state(static_cast<Eigen::Index>(z));
            }
            state.swap(out);
        } else if (inst.action == QueryAction::diagonal) {
            for (std::uint64_t z = 0; z < dim; ++z)
                state(static_cast<Eigen::Index>(z)) *= std::polar(1.0, q->power * inst.diag_phase(f, z >> back));
        } else {
            CMatrix qm = inst.query(f);
            if (q->power < 0) qm = qm.adjoint().eval();
            apply_front_unitary(state, qm, inst.query_bits, system_bits);
        }
    } else if (const auto* d = std::get_if<DenseGate>(&gate)) {
        require(d->u.rows() == state.size(), "apply_gate_state: dense gate dim mismatch");
        state = d->u * state;
    } else if (const auto* fr = std::get_if<FrontGate>(&gate)) {
        apply_front_unitary(state, fr->u, fr->bits, system_bits);
    } else if (const auto* p = std::get_if<PermGate>(&gate)) {
        CVector out = CVector::Zero(state.size());
        for (std::uint64_t z = 0; z < dim; ++z) out(static_cast<Eigen::Index>(p->fwd(z))) = state(static_cast<Eigen::Index>(z));
        state.swap(out);
    } else {
        const auto& di = std::get<DiagGate>(gate);
        for (std::uint64_t z = 0; z < dim; ++z) state(static_cast<Eigen::Index>(z)) *= std::polar(1.0, di.phase(z));
    }
}

inline CVector apply_circuit_state(const CircuitSpec& c, const OracleInstance& inst, const FunctionTable& f,
                                   CVector state) {
    require(c.system_bits <= kMaxStateBits, "apply_circuit_state: system too large");
    for (const auto& g : c.gates) apply_gate_state(state, g, inst, f, c.system_bits);
    return state;
}

/// Dense matrix of the instantiated circuit (columns via basis propagation).
inline CMatrix apply_circuit(const CircuitSpec& c, const OracleInstance& inst, const FunctionTable& f) {
    std::uint64_t dim = c.dim();
    require(static_cast<Eigen::Index>(dim) <= kMaxDenseDim, "apply_circuit: size cap exceeded (dim > 1024)");
    require(inst.query_bits <= c.system_bits, "apply_circuit: oracle register exceeds the system");
    CMatrix out(dim, dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        CVector e = CVector::Zero(static_cast<Eigen::Index>(dim));
        e(static_cast<Eigen::Index>(col)) = 1.0;
        out.col(static_cast<Eigen::Index>(col)) = apply_circuit_state(c, inst, f, std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sparse state application, for wide ancilla-laden circuits whose gates are
// classical, diagonal, or front-register unitaries.
// ---------------------------------------------------------------------------

struct SparseState {
    std::vector<std::pair<std::uint64_t, cxd>> amps;  // sorted by index

    static SparseState basis(std::uint64_t index) { return SparseState{{{index, cxd(1.0, 0.0)}}}; }

    void canonicalize() {
        std::sort(amps.begin(), amps.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<std::uint64_t, cxd>> merged;
        merged.reserve(amps.size());
        for (const auto& [z, a] : amps) {
            if (!merged.empty() && merged.back().first == z)
                merged.back().second += a;
            else
                merged.emplace_back(z, a);
        }
        std::erase_if(merged, [](const auto& p) { return std::abs(p.second) < 1e-16; });
        amps.swap(merged);
    }

    double norm() const {
        double s = 0.0;
        for (const auto& [z, a] : amps) s += std::norm(a);
        return std::sqrt(s);
    }
};

inline void apply_gate_sparse(SparseState& state, const Gate& gate, const OracleInstance& inst, const FunctionTable& f,
                              int system_bits) {
    if (const auto* q = std::get_if<QueryGate>(&gate)) {
        int back = system_bits - inst.query_bits;
        std::uint64_t back_mask = (std::uint64_t{1} << back) - 1;
        if (inst.action == QueryAction::classical) {
            for (auto& [z, a] : state.amps) z = (inst.index_map(f, z >> back, q->power) << back) | (z & back_mask);
            state.canonicalize();
        } else if (inst.action == QueryAction::diagonal) {
            for (auto& [z, a] : state.amps) a *= std::polar(1.0, q->power * inst.diag_phase(f, z >> back));
        } else {
            CMatrix qm = inst.query(f);
            if (q->power < 0) qm = qm.adjoint().eval();
            SparseState out;
            int bits = inst.query_bits;
            for (const auto& [z, a] : state.amps) {
                std::uint64_t front = z >> (system_bits - bits);
                std::uint64_t low = z & ((std::uint64_t{1} << (system_bits - bits)) - 1);
                for (Eigen::Index r = 0; r < qm.rows(); ++r) {
                    cxd w = qm(r, static_cast<Eigen::Index>(front)) * a;
                    if (std::abs(w) > 1e-16)
                        out.amps.emplace_back((static_cast<std::uint64_t>(r) << (system_bits - bits)) | low, w);
                }
            }
            out.canonicalize();
            state = std::move(out);
        }
    } else if (const auto* fr = std::get_if<FrontGate>(&gate)) {
        SparseState out;
        int back = system_bits - fr->bits;
        std::uint64_t low_mask = (std::uint64_t{1} << back) - 1;
        for (const auto& [z, a] : state.amps) {
            std::uint64_t front = z >> back;
            std::uint64_t low = z & low_mask;
            for (Eigen::Index r = 0; r < fr->u.rows(); ++r) {
                cxd w = fr->u(r, static_cast<Eigen::Index>(front)) * a;
                if (std::abs(w) > 1e-16) out.amps.emplace_back((static_cast<std::uint64_t>(r) << back) | low, w);
            }
        }
        out.canonicalize();
        state = std::move(out);
    } else if (const auto* p = std::get_if<PermGate>(&gate)) {
        for (auto& [z, a] : state.amps) z = p->fwd(z);
        state.canonicalize();
    } else if (const auto* di = std::get_if<DiagGate>(&gate)) {
        for (auto& [z, a] : state.amps) a *= std::polar(1.0, di->phase(z));
    } else {
        throw contract_error("apply_gate_sparse: dense full-system gates are not supported on the sparse path");
    }
}

inline SparseState apply_circuit_sparse(const CircuitSpec& c, const OracleInstance& inst, const FunctionTable& f,
                                        SparseState state) {
    for (const auto& g : c.gates) apply_gate_sparse(state, g, inst, f, c.system_bits);
    return state;
}

// ---------------------------------------------------------------------------
// Approximation error and the success-probability evaluator.
// ---------------------------------------------------------------------------

/// Outcome of comparing a circuit against a target oracle over a function set.
struct SimulationReport {
    std::string target;              // target oracle id
    std::vector<double> per_f_errors;
    double max_error = 0.0;
    int query_count = 0;
    bool exact = false;              // max_error <= 1e-8
    bool w_as_constant = false;      // eigenbasis rotations accounted as constants
    std::string note;
};

/// Per-function operator-norm error || lift(Q2_f) - U_f || of the circuit c
/// (with q1 queries) against target q2, maximized over fs.
inline SimulationReport approx_error(const CircuitSpec& c, const OracleInstance& q1, const OracleInstance& q2,
                                     const std::vector<FunctionTable>& fs) {
    require_input(!fs.empty(), "approx_error: empty function set");
    require(q2.query_bits <= c.system_bits, "approx_error: target does not fit the system");
    SimulationReport rep;
    rep.target = q2.id;
    rep.query_count = c.query_count();
    rep.per_f_errors.resize(fs.size());
    std::uint64_t dim = c.dim();
    require(static_cast<Eigen::Index>(dim) <= kMaxDenseDim, "approx_error: size cap exceeded");
    for (std::size_t i = 0; i < fs.size(); ++i) {
        CMatrix target = lift(q2.query(fs[i]), static_cast<Eigen::Index>(dim));
        CMatrix got = apply_circuit(c, q1, fs[i]);
        rep.per_f_errors[i] = op_norm(target - got);
    }
    rep.max_error = *std::max_element(rep.per_f_errors.begin(), rep.per_f_errors.end());
    rep.exact = rep.max_error <= 1e-8;
    return rep;
}

/// Probability that the last out_bits of the register read `expected` after
/// running the circuit on basis state |x>.
inline double success_probability(const CircuitSpec& c, const OracleInstance& inst, const FunctionTable& f,
                                  std::uint64_t x, std::uint64_t expected, int out_bits) {
    std::uint64_t dim = c.dim();
    require_input(x < dim, "success_probability: input state out of range");
    require_input(out_bits >= 0 && out_bits <= c.system_bits, "success_probability: bad output register width");
    std::uint64_t out_mask = (out_bits == 0) ? 0 : ((std::uint64_t{1} << out_bits) - 1);
    require_input(expected <= out_mask, "success_probability: expected value exceeds the output register");
    CVector e = CVector::Zero(static_cast<Eigen::Index>(dim));
    e(static_cast<Eigen::Index>(x)) = 1.0;
    CVector out = apply_circuit_state(c, inst, f, std::move(e));
    double p = 0.0;
    for (std::uint64_t z = 0; z < dim; ++z)
        if ((z & out_mask) == expected) p += std::norm(out(static_cast<Eigen::Index>(z)));
    return p;
}

// ---------------------------------------------------------------------------
// Composition: substitute a simulation circuit into every query slot.
// ---------------------------------------------------------------------------

namespace detail {

inline Gate lift_gate_to(const Gate& g, int from_bits, int to_bits) {
    if (from_bits == to_bits) return g;
    int shift = to_bits - from_bits;
    std::uint64_t low_mask = (std::uint64_t{1} << shift) - 1;
    if (const auto* d = std::get_if<DenseGate>(&g)) return FrontGate{from_bits, d->u};
    if (const auto* fr = std::get_if<FrontGate>(&g)) return *fr;
    if (const auto* q = std::get_if<QueryGate>(&g)) return *q;
    if (const auto* p = std::get_if<PermGate>(&g)) {
        auto fwd = p->fwd, inv = p->inv;
        return PermGate{p->desc,
                        [fwd, shift, low_mask](std::uint64_t z) { return (fwd(z >> shift) << shift) | (z & low_mask); },
                        [inv, shift, low_mask](std::uint64_t z) { return (inv(z >> shift) << shift) | (z & low_mask); }};
    }
    const auto& di = std::get<DiagGate>(g);
    auto ph = di.phase;
    return DiagGate{di.desc, [ph, shift](std::uint64_t z) { return ph(z >> shift); }};
}

}  // namespace detail

/// Replace every Query(p) of `outer` by the gate list of `inner` (reversed
/// and inverted for p = -1). Inner must target the oracle outer queries.
inline CircuitSpec compose_simulations(const CircuitSpec& outer, const CircuitSpec& inner) {
    require_input(!inner.simulates.empty() && inner.simulates == outer.oracle_slot,
                  "compose_simulations: inner target does not match outer query slot");
    require_input(inner.system_bits <= outer.system_bits, "compose_simulations: inner is wider than outer");
    CircuitSpec out;
    out.system_bits = outer.system_bits;
    out.oracle_slot = inner.oracle_slot;
    out.simulates = outer.simulates;
    CircuitSpec inner_rev = circuit_inverse(inner);
    for (const auto& g : outer.gates) {
        if (const auto* q = std::get_if<QueryGate>(&g)) {
            const CircuitSpec& sub = (q->power >= 0) ? inner : inner_rev;
            for (const auto& ig : sub.gates) out.gates.push_back(detail::lift_gate_to(ig, inner.system_bits, outer.system_bits));
        } else {
            out.gates.push_back(g);
        }
    }
    return out;
}

}  // namespace qoracle
