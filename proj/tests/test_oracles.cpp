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
#include "qoracle/oracles.hpp"

using namespace qoracle;
using qoracle::test::basis_state;
using qoracle::test::max_diff;

TEST_CASE("fourier_state small cases") {
    CVector p0 = fourier_state(1, 0);
    REQUIRE(max_diff(p0, CVector::Constant(2, cxd(1 / std::sqrt(2.0), 0))) <= 1e-15);

    CVector p1 = fourier_state(1, 1);
    REQUIRE(std::abs(p1(0) - cxd(1 / std::sqrt(2.0), 0)) <= 1e-15);
    REQUIRE(std::abs(p1(1) + cxd(1 / std::sqrt(2.0), 0)) <= 1e-12);  // amplitude e^{-pi i}/sqrt 2

    REQUIRE_THROWS_AS(fourier_state(1, 2), input_error);
}

TEST_CASE("fourier states are orthonormal for m=3") {
    for (std::uint64_t s = 0; s < 8; ++s)
        for (std::uint64_t t = 0; t < 8; ++t) {
            cxd ip = fourier_state(3, s).adjoint() * fourier_state(3, t);
            REQUIRE(std::abs(ip - (s == t ? 1.0 : 0.0)) <= 1e-12);
        }
}

TEST_CASE("build_standard NOT function") {
    FunctionTable f(1, 1, {1, 0});
    CMatrix q = build_standard(f);
    REQUIRE(max_diff(q * basis_state(4, 0), basis_state(4, 1)) == 0.0);  // |00> -> |01>
    REQUIRE(max_diff(q * basis_state(4, 1), basis_state(4, 0)) == 0.0);
    REQUIRE(max_diff(q * basis_state(4, 2), basis_state(4, 2)) == 0.0);
    REQUIRE(max_diff(q * basis_state(4, 3), basis_state(4, 3)) == 0.0);
}

TEST_CASE("build_standard zero function and mod-2^m addition") {
    REQUIRE(max_diff(build_standard(FunctionTable::constant(2, 2, 0)), CMatrix::Identity(16, 16)) == 0.0);

    // n=1, m=2, f=[3,0]: |0>|2> -> |0>|(2+3) mod 4> = |0>|1>
    FunctionTable f(1, 2, {3, 0});
    CMatrix q = build_standard(f);
    REQUIRE(max_diff(q * basis_state(8, 2), basis_state(8, 1)) == 0.0);
}

TEST_CASE("standard_eigensystem phases and labels") {
    FunctionTable f(1, 1, {0, 1});
    auto sys = standard_eigensystem(f);
    // s = 0 phases vanish for any f
    REQUIRE(sys.phases[sys.index_of({0, 0})] == 0.0);
    REQUIRE(sys.phases[sys.index_of({1, 0})] == 0.0);
    // x=1, s=1: phase pi (eigenvalue -1)
    REQUIRE(sys.phases[sys.index_of({1, 1})] == Catch::Approx(kPi).margin(1e-15));
}

TEST_CASE("standard_eigensystem matches build_standard on random functions") {
    for (int t = 0; t < 10; ++t) {
        Rng rng(derive_seed(42, "std-eig", t));
        FunctionTable f = random_function(2, 2, rng);
        CMatrix q = build_standard(f);
        auto sys = standard_eigensystem(f);
        REQUIRE(sys.max_residual(q) <= 1e-10);
        REQUIRE(sys.max_gram_offdiag() <= 1e-12);
    }
}

TEST_CASE("phase kickback identity at small sizes") {
    for (int t = 0; t < 10; ++t) {
        Rng rng(derive_seed(42, "kickback", t));
        FunctionTable f = random_function(2, 1, rng);
        CMatrix q = build_standard(f);
        for (std::uint64_t x = 0; x < 4; ++x)
            for (std::uint64_t s = 0; s < 2; ++s) {
                CVector in = CVector::Zero(8);
                in.segment(static_cast<Eigen::Index>(x * 2), 2) = fourier_state(1, s);
                std::uint64_t sf = (s * f(x)) % 2;
                cxd phase = std::polar(1.0, kTau * static_cast<double>(sf) / 2.0);
                REQUIRE((q * in - phase * in).norm() <= 1e-10);
            }
    }
}

TEST_CASE("build_complex_phase") {
    REQUIRE(max_diff(build_complex_phase(FunctionTable::constant(1, 1, 0), 1), CMatrix::Identity(2, 2)) == 0.0);

    FunctionTable f(1, 1, {1, 0});
    CMatrix q = build_complex_phase(f, 1);
    REQUIRE(std::abs(q(0, 0) - cxd(-1, 0)) <= 1e-12);
    REQUIRE(std::abs(q(1, 1) - cxd(1, 0)) <= 1e-15);

    // d = 2^m is the identity for every f
    for (std::uint64_t e = 0; e < 4; ++e) {
        FunctionTable g = function_from_index(1, 1, e);
        REQUIRE(max_diff(build_complex_phase(g, 2), CMatrix::Identity(2, 2)) <= 1e-15);
    }
    // negative degrees wrap too
    FunctionTable h(1, 2, {1, 3});
    REQUIRE(max_diff(build_complex_phase(h, -1), build_complex_phase(h, 3)) <= 1e-12);
}

TEST_CASE("orbit_decomposition") {
    auto dec_id = orbit_decomposition(FunctionTable::identity(2));
    REQUIRE(dec_id.orbit_count == 4);
    for (const auto& o : dec_id.orbits) REQUIRE(o.length == 1);

    auto dec4 = orbit_decomposition(FunctionTable(2, 2, {1, 2, 3, 0}));
    REQUIRE(dec4.orbit_count == 1);
    REQUIRE(dec4.orbits[0].length == 4);
    REQUIRE(dec4.orbits[0].representative == 0);
    REQUIRE(dec4.orbits[0].members == std::vector<std::uint32_t>{0, 1, 2, 3});

    auto dec22 = orbit_decomposition(FunctionTable(2, 2, {1, 0, 3, 2}));
    REQUIRE(dec22.orbit_count == 2);
    REQUIRE(dec22.orbits[0].representative == 0);
    REQUIRE(dec22.orbits[1].representative == 2);
    REQUIRE(dec22.orbits[0].length == 2);
    REQUIRE(dec22.orbits[1].length == 2);

    REQUIRE_THROWS_AS(orbit_decomposition(FunctionTable(1, 1, {0, 0})), contract_error);
}

TEST_CASE("build_minimal") {
    FunctionTable notperm(1, 1, {0, 0});
    REQUIRE(minimal_is_degenerate(notperm));
    REQUIRE(max_diff(build_minimal(notperm), CMatrix::Identity(2, 2)) == 0.0);

    FunctionTable swap(1, 1, {1, 0});
    CMatrix x = build_minimal(swap);
    REQUIRE(x(1, 0) == cxd(1, 0));
    REQUIRE(x(0, 1) == cxd(1, 0));

    FunctionTable cyc(2, 2, {1, 2, 3, 0});
    CMatrix q = build_minimal(cyc);
    for (std::uint64_t col = 0; col < 4; ++col) REQUIRE(q(cyc(col), col) == cxd(1, 0));
}

TEST_CASE("minimal_eigensystem identity and four cycle") {
    auto id_sys = minimal_eigensystem(FunctionTable::identity(2));
    for (double p : id_sys.phases) REQUIRE(p == 0.0);
    REQUIRE(max_diff(id_sys.vectors, CMatrix::Identity(4, 4)) == 0.0);

    FunctionTable cyc(2, 2, {1, 2, 3, 0});
    auto sys = minimal_eigensystem(cyc);
    Eigen::Index j = sys.index_of({0, 1});
    REQUIRE(sys.phases[j] == Catch::Approx(kPi / 2).margin(1e-15));
    CVector expect(4);
    expect << 0.5, cxd(0, -0.5), -0.5, cxd(0, 0.5);
    REQUIRE(max_diff(CVector(sys.vectors.col(j)), expect) <= 1e-12);

    REQUIRE_THROWS_AS(minimal_eigensystem(FunctionTable(1, 1, {1, 1})), contract_error);
}

TEST_CASE("minimal_eigensystem exhaustive over permutations of n=2") {
    for (const auto& f : enumerate_permutations(2)) {
        CMatrix q = build_minimal(f);
        auto sys = minimal_eigensystem(f);
        REQUIRE(sys.max_residual(q) <= 1e-10);
        REQUIRE(sys.max_gram_offdiag() <= 1e-9);
    }
}

TEST_CASE("minimal oracle inverse pairs") {
    for (int n = 1; n <= 3; ++n) {
        for (const auto& f : enumerate_permutations(n)) {
            std::vector<std::uint32_t> inv(f.values.size());
            for (std::uint64_t x = 0; x < f.domain_size(); ++x) inv[f(x)] = static_cast<std::uint32_t>(x);
            FunctionTable fi(n, n, inv);
            CMatrix prod = build_minimal(f) * build_minimal(fi);
            REQUIRE(max_diff(prod, CMatrix::Identity(f.domain_size(), f.domain_size())) == 0.0);
        }
    }
}

TEST_CASE("generic local phase oracle") {
    // all-zero coefficients: identity
    GenericLocalPhaseSpec zero;
    zero.coeffs = Eigen::MatrixXd::Zero(4, 4);
    zero.coeff_bound = 0.0;
    zero.p_bound = 0;
    FunctionTable f(2, 2, {1, 2, 3, 0});
    REQUIRE(max_diff(build_generic_local_phase(zero, f), CMatrix::Identity(4, 4)) == 0.0);

    // diagonal c with the linear preset equals the complex phase oracle, d=1
    auto diag = GenericLocalPhaseSpec::diagonal(2, 1.0);
    REQUIRE(max_diff(build_generic_local_phase(diag, f), build_complex_phase(f, 1)) <= 1e-12);

    // f == 0 with g(0) = 0: identity
    auto band = GenericLocalPhaseSpec::diagonal(2, 1.0);
    REQUIRE(max_diff(build_generic_local_phase(band, FunctionTable::constant(2, 2, 0)), CMatrix::Identity(4, 4)) <= 1e-15);

    // band violation is rejected
    GenericLocalPhaseSpec bad;
    bad.coeffs = Eigen::MatrixXd::Ones(4, 4);
    bad.coeff_bound = 1.0;
    bad.p_bound = 1;
    REQUIRE_THROWS_AS(build_generic_local_phase(bad, f), input_error);
}

TEST_CASE("generic local phase sine preset") {
    auto spec = GenericLocalPhaseSpec::diagonal(1, 2.0, GPreset::sine);
    FunctionTable f(1, 2, {1, 3});
    CMatrix q = build_generic_local_phase(spec, f);
    for (std::uint64_t x = 0; x < 2; ++x) {
        double expect = 2.0 * std::sin(kTau * f(x) / 4.0);
        REQUIRE(std::abs(q(x, x) - std::polar(1.0, expect)) <= 1e-12);
    }
    // a banded off-diagonal spec couples neighbouring rows' phases
    GenericLocalPhaseSpec band;
    band.g = GPreset::sine;
    band.coeffs = Eigen::MatrixXd::Zero(4, 4);
    for (Eigen::Index x = 0; x < 4; ++x) band.coeffs(x, (x + 1) % 4) = 0.5;
    band.coeff_bound = 0.5;
    band.p_bound = 1;
    FunctionTable g(2, 1, {1, 0, 1, 1});
    CMatrix qb = build_generic_local_phase(band, g);
    for (std::uint64_t x = 0; x < 4; ++x) {
        double expect = 0.5 * std::sin(kTau * g((x + 1) % 4) / 2.0);
        REQUIRE(std::abs(qb(x, x) - std::polar(1.0, expect)) <= 1e-12);
    }
}

TEST_CASE("oracle_phases") {
    auto std0 = oracle_phases(OracleKind::standard, FunctionTable::constant(1, 1, 0));
    for (auto& [l, p] : std0) REQUIRE(p == 0.0);

    auto cp = oracle_phases(OracleKind::complex_phase, FunctionTable(1, 1, {1, 0}), OracleParams{.d = 1});
    REQUIRE(cp.at({0, 0}) == Catch::Approx(kPi).margin(1e-15));
    REQUIRE(cp.at({1, 0}) == 0.0);

    auto mn = oracle_phases(OracleKind::minimal, FunctionTable(2, 2, {1, 2, 3, 0}));
    for (int s = 0; s < 4; ++s) REQUIRE(mn.at({0, s}) == Catch::Approx(kPi * s / 2).margin(1e-15));
}

TEST_CASE("eigenvalue multiplicity is invariant under lift") {
    FunctionTable f(2, 2, {1, 2, 3, 0});
    CMatrix q = build_minimal(f);
    auto base = eig_unitary(q);
    auto lifted = eig_unitary(lift(q, 8));
    std::map<long, int> base_count, lift_count;
    for (double p : base.phases) base_count[std::lround(p * 1e9)]++;
    for (double p : lifted.phases) lift_count[std::lround(p * 1e9)]++;
    REQUIRE(base_count.size() == lift_count.size());
    for (auto& [k, c] : base_count) REQUIRE(lift_count.at(k) == 2 * c);
}

TEST_CASE("oracle instances expose classical and diagonal actions") {
    auto std_inst = make_standard_instance(1, 2);
    FunctionTable f(1, 2, {3, 0});
    CMatrix q = std_inst.query(f);
    for (std::uint64_t z = 0; z < 8; ++z) {
        std::uint64_t fwd = std_inst.index_map(f, z, +1);
        REQUIRE(q(fwd, z) == cxd(1, 0));
        REQUIRE(std_inst.index_map(f, fwd, -1) == z);
    }

    auto cp_inst = make_complex_phase_instance(2, 2, 3);
    FunctionTable g(2, 2, {0, 1, 2, 3});
    CMatrix qc = cp_inst.query(g);
    for (std::uint64_t z = 0; z < 4; ++z)
        REQUIRE(std::abs(qc(z, z) - std::polar(1.0, cp_inst.diag_phase(g, z))) <= 1e-15);

    auto min_inst = make_minimal_instance(2);
    REQUIRE(min_inst.build(FunctionTable(2, 2, {0, 0, 1, 2})).degenerate);
    REQUIRE_FALSE(min_inst.build(FunctionTable(2, 2, {1, 0, 3, 2})).degenerate);
}
