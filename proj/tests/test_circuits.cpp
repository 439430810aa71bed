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
#include "qoracle/circuit.hpp"
#include "qoracle/degree.hpp"

using namespace qoracle;
using qoracle::test::max_diff;

TEST_CASE("apply_circuit basics") {
    auto inst = make_standard_instance(1, 1);
    FunctionTable f(1, 1, {1, 0});

    CircuitSpec empty;
    empty.system_bits = 2;
    empty.oracle_slot = "std";
    REQUIRE(max_diff(apply_circuit(empty, inst, f), CMatrix::Identity(4, 4)) == 0.0);

    CircuitSpec pair = empty;
    pair.push_query(+1);
    pair.push_query(-1);
    REQUIRE(max_diff(apply_circuit(pair, inst, f), CMatrix::Identity(4, 4)) <= 1e-14);
    REQUIRE(pair.query_count() == 2);

    CircuitSpec single = empty;
    single.push_query(+1);
    REQUIRE(max_diff(apply_circuit(single, inst, f), build_standard(f)) <= 1e-14);
}

TEST_CASE("queries lift onto the front register") {
    auto inst = make_complex_phase_instance(1, 1, 1);
    FunctionTable f(1, 1, {1, 0});
    CircuitSpec c;
    c.system_bits = 3;
    c.oracle_slot = "cp";
    c.push_query(+1);
    CMatrix got = apply_circuit(c, inst, f);
    REQUIRE(max_diff(got, lift(build_complex_phase(f, 1), 8)) <= 1e-14);
}

TEST_CASE("gate kinds agree between dense, state and sparse paths") {
    Rng rng(derive_seed(21, "gate-paths"));
    auto inst = make_standard_instance(1, 1);
    FunctionTable f(1, 1, {1, 1});

    CircuitSpec c;
    c.system_bits = 3;
    c.oracle_slot = "std";
    c.push_query(+1);
    c.gates.push_back(FrontGate{2, haar_unitary(4, rng)});
    c.gates.push_back(PermGate{"rot",
                               [](std::uint64_t z) { return (z + 3) % 8; },
                               [](std::uint64_t z) { return (z + 5) % 8; }});
    c.gates.push_back(DiagGate{"lin", [](std::uint64_t z) { return 0.1 * static_cast<double>(z); }});
    c.push_query(-1);
    c.push_constant(haar_unitary(8, rng));

    CMatrix dense = apply_circuit(c, inst, f);
    REQUIRE(is_unitary(dense));

    // state path on a random vector
    CVector v = random_state(8, rng);
    CVector via_state = apply_circuit_state(c, inst, f, v);
    REQUIRE((via_state - dense * v).cwiseAbs().maxCoeff() <= 1e-12);

    // sparse path (dense full-system gates excluded) on basis states
    CircuitSpec sparse_ok = c;
    sparse_ok.gates.pop_back();
    CMatrix dense2 = apply_circuit(sparse_ok, inst, f);
    for (std::uint64_t z = 0; z < 8; ++z) {
        SparseState s = apply_circuit_sparse(sparse_ok, inst, f, SparseState::basis(z));
        CVector col = CVector::Zero(8);
        for (auto& [idx, amp] : s.amps) col(static_cast<Eigen::Index>(idx)) = amp;
        REQUIRE((col - dense2.col(static_cast<Eigen::Index>(z))).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("circuit_inverse reverses and inverts") {
    Rng rng(derive_seed(22, "circ-inv"));
    auto inst = make_minimal_instance(2);
    FunctionTable f(2, 2, {2, 0, 3, 1});
    CircuitSpec c;
    c.system_bits = 2;
    c.oracle_slot = "min";
    c.push_constant(haar_unitary(4, rng));
    c.push_query(+1);
    c.push_constant(haar_unitary(4, rng));
    c.push_query(-1);

    CMatrix m = apply_circuit(c, inst, f);
    CMatrix mi = apply_circuit(circuit_inverse(c), inst, f);
    REQUIRE(op_norm(m * mi - CMatrix::Identity(4, 4)) <= 1e-9);
    REQUIRE(op_norm(mi - CMatrix(m.inverse())) <= 1e-9);
}

TEST_CASE("approx_error basics") {
    auto cp = make_complex_phase_instance(1, 1, 1);
    FunctionTable f(1, 1, {1, 0});

    // a circuit implementing the target exactly
    CircuitSpec exact;
    exact.system_bits = 1;
    exact.oracle_slot = "cp";
    exact.push_query(+1);
    auto rep = approx_error(exact, cp, cp, {f});
    REQUIRE(rep.max_error <= 1e-8);
    REQUIRE(rep.exact);

    // identity circuit vs complex phase at f = [1, 0]: diff diag(-2, 0)
    CircuitSpec id;
    id.system_bits = 1;
    id.oracle_slot = "cp";
    auto rep2 = approx_error(id, cp, cp, {f});
    REQUIRE(rep2.max_error == Catch::Approx(2.0).margin(1e-12));

    REQUIRE_THROWS_AS(approx_error(id, cp, cp, {}), input_error);
}

TEST_CASE("approx_error is invariant under a joint base change") {
    Rng rng(derive_seed(23, "conj-invariance"));
    auto cp = make_complex_phase_instance(1, 1, 1);
    CMatrix g = haar_unitary(2, rng);

    OracleInstance conj = cp;
    conj.id = "cp-conj";
    conj.build = [g, cp](const FunctionTable& f) {
        return QueryBuild{g * cp.query(f) * g.adjoint(), false};
    };
    conj.action = QueryAction::dense;

    FunctionTable f1(1, 1, {1, 0}), f2(1, 1, {0, 1});
    CircuitSpec c;
    c.system_bits = 1;
    c.oracle_slot = "cp";
    c.push_constant(haar_unitary(2, rng));
    c.push_query(+1);
    c.push_constant(haar_unitary(2, rng));

    CircuitSpec c_conj = c;
    c_conj.gates.clear();
    c_conj.push_constant(g * std::get<DenseGate>(c.gates[0]).u * g.adjoint());
    c_conj.push_query(+1);
    c_conj.push_constant(g * std::get<DenseGate>(c.gates[2]).u * g.adjoint());
    c_conj.oracle_slot = "cp-conj";

    auto plain = approx_error(c, cp, cp, {f1, f2});
    auto conjd = approx_error(c_conj, conj, conj, {f1, f2});
    REQUIRE(std::abs(plain.max_error - conjd.max_error) <= 1e-9);
}

TEST_CASE("success_probability") {
    auto inst = make_standard_instance(1, 1);
    FunctionTable f(1, 1, {1, 0});

    // one standard query computes f into the output register deterministically
    CircuitSpec c;
    c.system_bits = 2;
    c.oracle_slot = "std";
    c.push_query(+1);
    REQUIRE(success_probability(c, inst, f, 0b00, f(0), 1) == Catch::Approx(1.0).margin(1e-12));

    CircuitSpec id;
    id.system_bits = 2;
    id.oracle_slot = "std";
    REQUIRE(success_probability(id, inst, f, 0b00, 1, 1) == Catch::Approx(0.0).margin(1e-15));

    // uniform superposition over the output bit: probability 1/2
    CircuitSpec had = id;
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    had.push_constant(lift(CMatrix::Identity(2, 2), 4).eval());
    std::get<DenseGate>(had.gates.back()).u = tensor(CMatrix::Identity(2, 2), h);
    REQUIRE(success_probability(had, inst, f, 0b00, 0, 1) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("compose_simulations") {
    auto min2 = make_minimal_instance(2);

    // inner: a trivial exact self-simulation of the minimal oracle
    CircuitSpec inner;
    inner.system_bits = 2;
    inner.oracle_slot = "min";
    inner.simulates = "min";
    inner.push_query(+1);

    // outer with zero queries stays unchanged
    CircuitSpec outer0;
    outer0.system_bits = 4;
    outer0.oracle_slot = "min";
    outer0.simulates = "std";
    outer0.push_constant(CMatrix::Identity(16, 16));
    CircuitSpec same = compose_simulations(outer0, inner);
    REQUIRE(same.gates.size() == 1);
    REQUIRE(same.query_count() == 0);

    // query counts multiply under exact substitution
    CircuitSpec outer;
    outer.system_bits = 4;
    outer.oracle_slot = "min";
    outer.simulates = "std";
    outer.push_query(+1);
    outer.push_constant(CMatrix::Identity(16, 16));
    outer.push_query(-1);

    CircuitSpec inner2;
    inner2.system_bits = 2;
    inner2.oracle_slot = "min";
    inner2.simulates = "min";
    inner2.push_query(+1);
    inner2.push_constant(CMatrix::Identity(4, 4));
    inner2.push_query(+1);

    CircuitSpec comp = compose_simulations(outer, inner2);
    REQUIRE(comp.query_count() == outer.query_count() * inner2.query_count());
    REQUIRE(comp.oracle_slot == "min");
    REQUIRE(comp.simulates == "std");

    // slot mismatch is rejected
    CircuitSpec wrong = inner2;
    wrong.simulates = "cp";
    REQUIRE_THROWS_AS(compose_simulations(outer, wrong), input_error);

    // composite behaves like the outer circuit with Q^2 substituted
    FunctionTable f(2, 2, {1, 2, 3, 0});
    CMatrix direct = apply_circuit(outer, min2, f);
    CMatrix substituted = apply_circuit(comp, min2, f);
    // inner2 applies the query twice, so the composite tracks f^2's circuit
    FunctionTable f2 = f;
    for (std::uint64_t x = 0; x < 4; ++x) f2.values[x] = f(f(x));
    CMatrix direct_f2 = apply_circuit(outer, min2, f2);
    REQUIRE(max_diff(substituted, direct_f2) <= 1e-12);
    REQUIRE(max_diff(direct, direct_f2) <= 2.0 + 1e-12);  // sanity: both unitary
}

TEST_CASE("gate_dense_matrix matches the application paths") {
    Rng rng(derive_seed(24, "gate-dense"));
    Gate front = FrontGate{1, haar_unitary(2, rng)};
    Gate perm = PermGate{"inc", [](std::uint64_t z) { return (z + 1) % 4; }, [](std::uint64_t z) { return (z + 3) % 4; }};
    Gate diag = DiagGate{"step", [](std::uint64_t z) { return z == 2 ? kPi : 0.0; }};
    auto inst = make_minimal_instance(1);
    FunctionTable f = FunctionTable::identity(1);
    for (const Gate& g : {front, perm, diag}) {
        CMatrix m = gate_dense_matrix(g, 2);
        for (std::uint64_t z = 0; z < 4; ++z) {
            CVector e = CVector::Zero(4);
            e(static_cast<Eigen::Index>(z)) = 1.0;
            apply_gate_state(e, g, inst, f, 2);
            REQUIRE((e - m.col(static_cast<Eigen::Index>(z))).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
    REQUIRE_THROWS_AS(gate_dense_matrix(Gate{QueryGate{1}}, 2), contract_error);
}
