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

#include "qoracle/circuit.hpp"
#include "qoracle/symbolic_state.hpp"

namespace qoracle {

/// Dense matrix of a constant gate (throws on query slots).
inline CMatrix gate_dense_matrix(const Gate& g, int system_bits) {
    std::uint64_t dim = std::uint64_t{1} << system_bits;
    require(static_cast<Eigen::Index>(dim) <= kMaxDenseDim, "gate_dense_matrix: size cap exceeded");
    if (const auto* d = std::get_if<DenseGate>(&g)) return d->u;
    if (const auto* fr = std::get_if<FrontGate>(&g))
        return lift(fr->u, static_cast<Eigen::Index>(dim));
    if (const auto* p = std::get_if<PermGate>(&g)) {
        CMatrix m = CMatrix::Zero(dim, dim);
        for (std::uint64_t z = 0; z < dim; ++z) m(p->fwd(z), z) = 1.0;
        return m;
    }
    if (const auto* di = std::get_if<DiagGate>(&g)) {
        CMatrix m = CMatrix::Zero(dim, dim);
        for (std::uint64_t z = 0; z < dim; ++z) m(z, z) = std::polar(1.0, di->phase(z));
        return m;
    }
    throw contract_error("gate_dense_matrix: query slots have no constant matrix");
}

struct DegreeTrace {
    std::vector<int> degree_after;  // degree after each gate
    int query_count = 0;
    std::size_t final_terms = 0;
};

/// Propagate `initial` through the circuit symbolically, in the given
/// eigenbasis of the query. Constants are rotated into the basis; every
/// query shifts each label's own phase variable, so after N queries the
/// degree is at most N.
inline SymbolicState symbolic_run(const CircuitSpec& c, const EigenSystem& basis, const CVector& initial,
                                  DegreeTrace* trace = nullptr) {
    require(basis.dim == static_cast<Eigen::Index>(c.dim()), "symbolic_run: basis dim mismatch");
    SymbolicState s = symbolic_init(initial, basis);
    for (const auto& g : c.gates) {
        if (const auto* q = std::get_if<QueryGate>(&g)) {
            s = symbolic_apply_query(s, q->power);
            if (trace) ++trace->query_count;
        } else {
            CMatrix u = gate_dense_matrix(g, c.system_bits);
            s = symbolic_apply_constant(s, basis.vectors.adjoint() * u * basis.vectors);
        }
        if (trace) trace->degree_after.push_back(s.degree());
    }
    if (trace) trace->final_terms = s.term_count();
    return s;
}

}  // namespace qoracle
