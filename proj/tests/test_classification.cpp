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
#include "qoracle/classification.hpp"

using namespace qoracle;
using qoracle::test::max_diff;

namespace {

CMatrix swap_two_qubits() {
    CMatrix s = CMatrix::Zero(4, 4);
    s(0, 0) = 1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 3) = 1.0;
    return s;
}

/// Synthetic family mapping every f to the same fixed unitary.
OracleInstance constant_family(const std::string& id, int n, int m, CMatrix u) {
    OracleInstance inst;
    inst.id = id;
    inst.n = n;
    inst.m = m;
    inst.query_bits = log2_exact(static_cast<std::uint64_t>(u.rows()));
    inst.action = QueryAction::dense;
    inst.build = [u](const FunctionTable&) { return QueryBuild{u, false}; };
    return inst;
}

/// Conjugate a whole family by a fixed unitary.
OracleInstance conjugated(const OracleInstance& base, const CMatrix& g) {
    OracleInstance inst = base;
    inst.id = base.id + "-conj";
    inst.action = QueryAction::dense;
    inst.analytic = nullptr;
    inst.build = [base, g](const FunctionTable& f) { return QueryBuild{g * base.query(f) * g.adjoint(), false}; };
    return inst;
}

}  // namespace

TEST_CASE("enumerate_functions") {
    REQUIRE(enumerate_functions(1, 1).size() == 4);
    REQUIRE(enumerate_functions(2, 1).size() == 16);
    auto fam = enumerate_functions(1, 2);
    REQUIRE(fam.size() == 16);
    REQUIRE(fam.front().values == std::vector<std::uint32_t>{0, 0});
    REQUIRE_THROWS_AS(enumerate_functions(3, 3), contract_error);  // m 2^n = 24 > 16
}

TEST_CASE("product_commutant") {
    auto full = product_commutant(CMatrix::Identity(4, 4), 1);
    REQUIRE(full.dimension() == 4);  // identity commutes with every A

    FunctionTable f(1, 1, {1, 0});
    auto std_cb = product_commutant(build_standard(f), 1);
    REQUIRE(std_cb.dimension() >= 2);  // diag(a, b) always commutes
    for (const auto& a : std_cb.basis) {
        CMatrix lifted = tensor(a, CMatrix::Identity(2, 2));
        CMatrix q = build_standard(f);
        REQUIRE(op_norm(q * lifted - lifted * q) <= 1e-8);
    }

    auto swap_cb = product_commutant(swap_two_qubits(), 1);
    REQUIRE(swap_cb.dimension() == 1);  // only scalars survive
}

TEST_CASE("detect_nonentangled on the named oracle families") {
    auto fs11 = enumerate_functions(1, 1);
    auto std11 = make_standard_instance(1, 1);
    REQUIRE(detect_nonentangled(std11, fs11).verdict == Verdict::yes);

    auto min2 = make_minimal_instance(2);
    auto perms = enumerate_permutations(2);
    auto res = detect_nonentangled(min2, perms, 42, 64, true);
    REQUIRE(res.verdict == Verdict::yes);
    REQUIRE(res.witnesses.size() == perms.size());

    // witness bases are orthonormal
    for (const auto& w : res.witnesses) REQUIRE(is_unitary(w, 1e-9));
}

TEST_CASE("detect_nonentangled rejects the constant SWAP family") {
    auto inst = constant_family("swap-const", 1, 1, swap_two_qubits());
    auto fs = enumerate_functions(1, 1);
    auto res = detect_nonentangled(inst, fs);
    REQUIRE(res.verdict == Verdict::no);
}

TEST_CASE("detect_simple on standard and complex phase") {
    auto fs11 = enumerate_functions(1, 1);
    auto std11 = make_standard_instance(1, 1);
    auto res = detect_simple(std11, fs11);
    REQUIRE(res.simple);
    // the returned basis diagonalizes every query
    for (const auto& f : fs11) {
        CMatrix d = res.common_basis.adjoint() * build_standard(f) * res.common_basis;
        d.diagonal().setZero();
        REQUIRE(max_abs(d) <= 1e-9);
    }

    auto cp22 = make_complex_phase_instance(2, 2, 1);
    REQUIRE(detect_simple(cp22, enumerate_functions(2, 2)).simple);
}

TEST_CASE("detect_simple rejects the minimal oracle at permutations") {
    auto min2 = make_minimal_instance(2);
    auto res = detect_simple(min2, enumerate_permutations(2));
    REQUIRE_FALSE(res.simple);
    REQUIRE(res.counterexample.has_value());
}

TEST_CASE("detect_simple is invariant under a joint base change") {
    Rng rng(derive_seed(13, "classify-conj"));
    CMatrix g4 = haar_unitary(4, rng);

    auto std11 = make_standard_instance(1, 1);
    auto fs11 = enumerate_functions(1, 1);
    REQUIRE(detect_simple(conjugated(std11, g4), fs11).simple);

    auto min2 = make_minimal_instance(2);
    auto perms = enumerate_permutations(2);
    REQUIRE_FALSE(detect_simple(conjugated(min2, g4), perms).simple);
}

TEST_CASE("diagonal families share the computational eigenbasis") {
    auto glp = make_glp_instance(2, 2, GenericLocalPhaseSpec::diagonal(2, 0.7));
    auto res = detect_simple(glp, enumerate_functions(2, 2));
    REQUIRE(res.simple);
}

TEST_CASE("detect_basic on standard oracle") {
    auto std11 = make_standard_instance(1, 1);
    auto fs = enumerate_functions(1, 1);
    auto res = detect_basic(std11, fs);
    REQUIRE(res.basic);
    // g_{x,s}(v) = 2 pi s v / 2^m
    for (const auto& [label, table] : res.g_tables)
        for (const auto& [v, phase] : table) {
            double expect = canonical_phase(kTau * label[1] * v / 2.0);
            REQUIRE(phase_distance(phase, expect) <= 1e-12);
        }
}

TEST_CASE("detect_basic on complex phase oracle") {
    auto cp = make_complex_phase_instance(1, 2, 1);
    auto res = detect_basic(cp, enumerate_functions(1, 2));
    REQUIRE(res.basic);
    for (const auto& [label, table] : res.g_tables)
        for (const auto& [v, phase] : table) REQUIRE(phase_distance(phase, canonical_phase(kTau * v / 4.0)) <= 1e-12);
}

TEST_CASE("detect_basic rejects the minimal oracle at permutations") {
    auto min2 = make_minimal_instance(2);
    auto res = detect_basic(min2, enumerate_permutations(2));
    REQUIRE_FALSE(res.basic);
    REQUIRE(res.counterexample.has_value());
}

TEST_CASE("classification verdicts for the named oracle families") {
    struct Case {
        int n, m;
    };
    for (auto [n, m] : {Case{1, 1}, Case{2, 1}, Case{1, 2}}) {
        auto std_rep = classify_instance(make_standard_instance(n, m));
        REQUIRE(std_rep.simple);
        REQUIRE(std_rep.basic.basic);
        REQUIRE(std_rep.nonentangled.verdict == Verdict::yes);

        auto cp_rep = classify_instance(make_complex_phase_instance(n, m, 1));
        REQUIRE(cp_rep.simple);
        REQUIRE(cp_rep.basic.basic);
        REQUIRE(cp_rep.nonentangled.verdict == Verdict::yes);
    }

    auto min_rep = classify_instance(make_minimal_instance(2), /*permutations_only=*/true);
    REQUIRE(min_rep.nonentangled.verdict == Verdict::yes);
    REQUIRE_FALSE(min_rep.basic.basic);
    REQUIRE_FALSE(min_rep.simple);
    REQUIRE(min_rep.enumerated_function_count == 24);
}

TEST_CASE("hierarchy holds wherever all detectors run") {
    std::vector<ClassificationReport> reps;
    reps.push_back(classify_instance(make_standard_instance(1, 1)));
    reps.push_back(classify_instance(make_complex_phase_instance(1, 1, 1)));
    reps.push_back(classify_instance(make_minimal_instance(2), true));
    for (const auto& r : reps) {
        if (r.simple) REQUIRE(r.basic.basic);
        if (r.basic.basic) REQUIRE(r.nonentangled.verdict == Verdict::yes);
    }
}
