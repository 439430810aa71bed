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

#include <map>
#include <numeric>

#include "qoracle/circuit.hpp"

namespace qoracle {

// ---------------------------------------------------------------------------
// Two-query simulation of the standard oracle by the minimal oracle at
// permutations: query forward, add the front register into the back one,
// query backward.
// ---------------------------------------------------------------------------

/// |a>|y> -> |a>|y + a mod 2^n> on a 2n-bit system.
inline PermGate mod_add_gate(int n) {
    std::uint64_t dom = std::uint64_t{1} << n;
    auto fwd = [n, dom](std::uint64_t z) {
        std::uint64_t a = z >> n, y = z & (dom - 1);
        return (a << n) | ((y + a) % dom);
    };
    auto inv = [n, dom](std::uint64_t z) {
        std::uint64_t a = z >> n, y = z & (dom - 1);
        return (a << n) | ((y + dom - a) % dom);
    };
    return PermGate{"add_front_into_back", fwd, inv};
}

/// Circuit with two minimal-oracle queries acting as the standard oracle on
/// every permutation: |x>|y> -> |f(x)>|y> -> |f(x)>|y+f(x)> -> |x>|y+f(x)>.
inline CircuitSpec minimal_simulates_standard(int n) {
    require_input(n >= 1 && n <= 5, "minimal_simulates_standard: n must be in [1, 5]");
    CircuitSpec c;
    c.system_bits = 2 * n;
    c.oracle_slot = "min";
    c.simulates = "std";
    c.push_query(+1);
    c.gates.push_back(mod_add_gate(n));
    c.push_query(-1);
    return c;
}

// ---------------------------------------------------------------------------
// Circuit V: with 2 p standard queries, writes the orbit length r of the
// front value and its offset s from the orbit minimum into two fresh
// registers, restoring all iterate registers to zero.
//
// Register layout (front to back), every field n bits wide:
//   [x][a_1]...[a_p][r][s],  M = n (p + 3).
// ---------------------------------------------------------------------------

namespace detail {

struct FieldLayout {
    int n = 0;
    int fields = 0;  // number of n-bit fields
    int system_bits() const { return n * fields; }
    std::uint64_t mask() const { return (std::uint64_t{1} << n) - 1; }

    std::uint64_t get(std::uint64_t z, int field) const {
        return (z >> (n * (fields - 1 - field))) & mask();
    }
    std::uint64_t set(std::uint64_t z, int field, std::uint64_t value) const {
        int sh = n * (fields - 1 - field);
        return (z & ~(mask() << sh)) | (value << sh);
    }
};

/// Permutation of the n-bit fields; `order` lists, front to back, which old
/// field lands in each new slot.
inline PermGate field_reorder_gate(const FieldLayout& lay, std::vector<int> order, const std::string& desc) {
    std::vector<int> inverse(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) inverse[order[p]] = static_cast<int>(p);
    auto apply = [lay](const std::vector<int>& ord, std::uint64_t z) {
        std::uint64_t out = 0;
        for (int p = 0; p < lay.fields; ++p) out = lay.set(out, p, lay.get(z, ord[p]));
        return out;
    };
    auto fwd = [lay, order, apply](std::uint64_t z) { return apply(order, z); };
    auto inv = [lay, inverse, apply](std::uint64_t z) { return apply(inverse, z); };
    return PermGate{desc, fwd, inv};
}

/// Orbit bookkeeping from the iterate list (v_0 .. v_p): r is the first
/// return time of v_0, s the iteration count from the orbit minimum back to
/// v_0. Malformed lists (no return) yield r = s = 0. The r register stores
/// r - 1 so that a full 2^n-cycle still fits in n bits; both results are
/// added mod 2^n into the last two fields, which keeps the map a bijection.
inline std::pair<std::uint64_t, std::uint64_t> orbit_info_from_list(const FieldLayout& lay, std::uint64_t z, int p) {
    std::uint64_t v0 = lay.get(z, 0);
    int r = 0;
    for (int k = 1; k <= p; ++k) {
        if (lay.get(z, k) == v0) {
            r = k;
            break;
        }
    }
    if (r == 0) return {0, 0};
    std::uint64_t vmin = v0;
    int tmin = 0;
    for (int k = 1; k < r; ++k) {
        std::uint64_t vk = lay.get(z, k);
        if (vk < vmin) {
            vmin = vk;
            tmin = k;
        }
    }
    std::uint64_t s = static_cast<std::uint64_t>((r - tmin) % r);
    return {static_cast<std::uint64_t>(r), s};
}

inline PermGate orbit_info_gate(const FieldLayout& lay, int p) {
    std::uint64_t dom = std::uint64_t{1} << lay.n;
    auto fwd = [lay, p, dom](std::uint64_t z) {
        auto [r, s] = orbit_info_from_list(lay, z, p);
        std::uint64_t stored_r = r > 0 ? r - 1 : 0;
        z = lay.set(z, p + 1, (lay.get(z, p + 1) + stored_r) % dom);
        return lay.set(z, p + 2, (lay.get(z, p + 2) + s) % dom);
    };
    auto inv = [lay, p, dom](std::uint64_t z) {
        auto [r, s] = orbit_info_from_list(lay, z, p);
        std::uint64_t stored_r = r > 0 ? r - 1 : 0;
        z = lay.set(z, p + 1, (lay.get(z, p + 1) + dom - stored_r) % dom);
        return lay.set(z, p + 2, (lay.get(z, p + 2) + dom - s) % dom);
    };
    return PermGate{"orbit_info", fwd, inv};
}

}  // namespace detail

inline detail::FieldLayout circuit_v_layout(int n, int p_bound) {
    return detail::FieldLayout{n, p_bound + 3};
}

/// Decode the orbit registers of a circuit_V output index: the r field
/// stores r - 1, the s field stores s.
inline std::pair<std::uint64_t, std::uint64_t> decode_orbit_registers(const detail::FieldLayout& lay, std::uint64_t z,
                                                                      int p_bound) {
    return {lay.get(z, p_bound + 1) + 1, lay.get(z, p_bound + 2)};
}

/// The orbit-length circuit: |x>|0...0> -> |x>|0...0>|r>|s> for permutations
/// whose every orbit is at most p_bound long. Uses 2 p_bound queries.
inline CircuitSpec circuit_V(int n, int p_bound) {
    require_input(n >= 1 && p_bound >= 1, "circuit_V: n and p_bound must be positive");
    auto lay = circuit_v_layout(n, p_bound);
    require_input(lay.system_bits() <= kMaxStateBits,
                  "circuit_V: register budget n*(p_bound+3) exceeds the state cap");
    CircuitSpec c;
    c.system_bits = lay.system_bits();
    c.oracle_slot = "std";

    auto reloc = [&](int k) {
        std::vector<int> order{k - 1, k};
        for (int fidx = 0; fidx < lay.fields; ++fidx)
            if (fidx != k - 1 && fidx != k) order.push_back(fidx);
        return detail::field_reorder_gate(lay, order, "front<-(" + std::to_string(k - 1) + "," + std::to_string(k) + ")");
    };

    for (int k = 1; k <= p_bound; ++k) {
        PermGate p = reloc(k);
        c.gates.push_back(p);
        c.push_query(+1);
        c.gates.push_back(invert_gate(Gate{p}));
    }
    c.gates.push_back(detail::orbit_info_gate(lay, p_bound));
    for (int k = p_bound; k >= 1; --k) {
        PermGate p = reloc(k);
        c.gates.push_back(p);
        c.push_query(-1);
        c.gates.push_back(invert_gate(Gate{p}));
    }
    return c;
}

/// Orbitwise Fourier transform: |f^s(x_l)> -> |psi_{l,s}>.
inline CMatrix circuit_W(const FunctionTable& f) {
    require(f.is_permutation(), "circuit_W: not a permutation");
    require_input(f.n <= 4, "circuit_W: n must be <= 4");
    auto dec = orbit_decomposition(f);
    auto sys = minimal_eigensystem(f);
    std::uint64_t dim = f.domain_size();
    CMatrix w = CMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < sys.labels.size(); ++j) {
        const auto& orb = dec.orbits[sys.labels[j][0]];
        w.col(orb.members[sys.labels[j][1]]) = sys.vectors.col(static_cast<Eigen::Index>(j));
    }
    require(is_unitary(w), "circuit_W: assembled transform is not unitary");
    return w;
}

// ---------------------------------------------------------------------------
// The locally-basic sandwich: U, a phase keyed on the ancilla value G, then
// U^-1. Sends |psi_{x,i}>|0...0> to e^{i theta(G(f,x,i))} |psi_{x,i}>|0...0>.
// ---------------------------------------------------------------------------

inline CircuitSpec locally_basic_sandwich(const CircuitSpec& u, const std::map<std::uint64_t, double>& phase_table,
                                          int ancilla_bits) {
    require_input(ancilla_bits >= 0 && ancilla_bits <= u.system_bits, "locally_basic_sandwich: bad ancilla width");
    std::uint64_t mask = ancilla_bits == 0 ? 0 : ((std::uint64_t{1} << ancilla_bits) - 1);
    CircuitSpec out;
    out.system_bits = u.system_bits;
    out.oracle_slot = u.oracle_slot;
    out.gates = u.gates;
    auto table = phase_table;  // copy into the closure
    out.gates.push_back(DiagGate{"phase_by_ancilla", [table, mask](std::uint64_t z) {
                                     auto it = table.find(z & mask);
                                     return it == table.end() ? 0.0 : it->second;
                                 }});
    CircuitSpec inv = circuit_inverse(u);
    out.gates.insert(out.gates.end(), inv.gates.begin(), inv.gates.end());
    return out;
}

// ---------------------------------------------------------------------------
// Putting the pieces together: the standard oracle simulates the minimal
// oracle at bounded-orbit permutations.
// ---------------------------------------------------------------------------

struct MinViaStdResult {
    SimulationReport report;
    CircuitSpec circuit;
    int p_bound = 0;
};

/// Compose W^-1, V, W, the phase keyed on (r, s), and the uncomputation; the
/// result acts as the minimal-oracle query on the primary register whenever
/// the ancillas start at zero. The W rotations are accounted as constants
/// (w_as_constant), so the query count is 4 p_bound.
inline MinViaStdResult simulate_min_via_std(const FunctionTable& f, int p_bound) {
    require(f.is_permutation(), "simulate_min_via_std: not a permutation");
    auto dec = orbit_decomposition(f);
    require(dec.max_orbit_length() <= p_bound,
            "simulate_min_via_std: an orbit exceeds p_bound (precondition violation)");
    int n = f.n;
    auto lay = circuit_v_layout(n, p_bound);

    CircuitSpec stage;
    stage.system_bits = lay.system_bits();
    stage.oracle_slot = "std";
    CMatrix w = circuit_W(f);
    stage.gates.push_back(FrontGate{n, w.adjoint()});
    CircuitSpec v = circuit_V(n, p_bound);
    stage.gates.insert(stage.gates.end(), v.gates.begin(), v.gates.end());
    stage.gates.push_back(FrontGate{n, w});

    std::map<std::uint64_t, double> table;  // keyed on ((r - 1) << n) | s
    std::uint64_t dom = std::uint64_t{1} << n;
    for (std::uint64_t r = 1; r <= dom; ++r)
        for (std::uint64_t s = 0; s < r; ++s)
            table[((r - 1) << n) | s] = canonical_phase(kTau * static_cast<double>(s) / static_cast<double>(r));

    MinViaStdResult res;
    res.p_bound = p_bound;
    res.circuit = locally_basic_sandwich(stage, table, 2 * n);
    res.circuit.simulates = "min";

    // Verify against |x>|0...0> -> |f(x)>|0...0> on every primary basis state.
    auto std_inst = make_standard_instance(n, n);
    int back = lay.system_bits() - n;
    res.report.target = "min";
    res.report.query_count = res.circuit.query_count();
    res.report.w_as_constant = true;
    res.report.note = "restriction to zeroed ancilla registers";
    res.report.per_f_errors.resize(dom);
    for (std::uint64_t x = 0; x < dom; ++x) {
        SparseState out = apply_circuit_sparse(res.circuit, std_inst, f, SparseState::basis(x << back));
        std::uint64_t want = static_cast<std::uint64_t>(f(x)) << back;
        double err2 = 0.0;
        bool found = false;
        for (const auto& [z, a] : out.amps) {
            if (z == want) {
                err2 += std::norm(a - cxd(1.0, 0.0));
                found = true;
            } else {
                err2 += std::norm(a);
            }
        }
        if (!found) err2 += 1.0;
        res.report.per_f_errors[x] = std::sqrt(err2);
    }
    res.report.max_error = *std::max_element(res.report.per_f_errors.begin(), res.report.per_f_errors.end());
    res.report.exact = res.report.max_error <= 1e-8;
    return res;
}

}  // namespace qoracle
