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
#include <cstdint>
#include <functional>
#include <vector>

#include "qoracle/common.hpp"
#include "qoracle/rng.hpp"

namespace qoracle {

/// A discrete function f: B^n -> B^m as an explicit value table.
struct FunctionTable {
    int n = 0;
    int m = 0;
    std::vector<std::uint32_t> values;  // values[x] = f(x), indexed by x ascending

    FunctionTable() = default;
    FunctionTable(int n_, int m_, std::vector<std::uint32_t> vals) : n(n_), m(m_), values(std::move(vals)) {
        validate();
    }

    std::uint64_t domain_size() const { return std::uint64_t{1} << n; }
    std::uint64_t range_size() const { return std::uint64_t{1} << m; }
    std::uint32_t operator()(std::uint64_t x) const { return values[x]; }

    void validate() const {
        require_input(n >= 1 && m >= 1 && n <= 20 && m <= 20, "FunctionTable: n, m must be in [1, 20]");
        require_input(values.size() == domain_size(), "FunctionTable: table length must be 2^n");
        for (auto v : values) require_input(v < range_size(), "FunctionTable: entry out of range [0, 2^m)");
    }

    bool is_permutation() const {
        if (n != m) return false;
        std::vector<bool> seen(domain_size(), false);
        for (auto v : values) {
            if (seen[v]) return false;
            seen[v] = true;
        }
        return true;
    }

    /// f^k(x) for k >= 0 (requires nothing; iterates the table).
    std::uint32_t iterate(std::uint64_t x, int k) const {
        std::uint32_t v = static_cast<std::uint32_t>(x);
        for (int i = 0; i < k; ++i) v = values[v];
        return v;
    }

    static FunctionTable constant(int n, int m, std::uint32_t value) {
        return FunctionTable(n, m, std::vector<std::uint32_t>(std::uint64_t{1} << n, value));
    }

    static FunctionTable identity(int n) {
        std::vector<std::uint32_t> v(std::uint64_t{1} << n);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::uint32_t>(i);
        return FunctionTable(n, n, std::move(v));
    }

    bool operator==(const FunctionTable& o) const { return n == o.n && m == o.m && values == o.values; }
};

/// The index-th table in lexicographic order of (f(0), f(1), ...), i.e.
/// index written base 2^m with f(0) the most significant digit.
inline FunctionTable function_from_index(int n, int m, std::uint64_t index) {
    std::uint64_t dom = std::uint64_t{1} << n;
    std::vector<std::uint32_t> vals(dom);
    std::uint64_t mask = (std::uint64_t{1} << m) - 1;
    for (std::uint64_t x = 0; x < dom; ++x) {
        int shift = m * static_cast<int>(dom - 1 - x);
        vals[x] = static_cast<std::uint32_t>((index >> shift) & mask);
    }
    return FunctionTable(n, m, std::move(vals));
}

inline std::uint64_t function_family_size(int n, int m) {
    int bits = m * (1 << n);
    require(bits <= 16, "enumerate_functions: m*2^n must be <= 16 (size cap)");
    return std::uint64_t{1} << bits;
}

/// All 2^{m 2^n} tables in lexicographic order. Capped at 65536 functions.
inline std::vector<FunctionTable> enumerate_functions(int n, int m) {
    std::uint64_t total = function_family_size(n, m);
    std::vector<FunctionTable> out;
    out.reserve(total);
    for (std::uint64_t e = 0; e < total; ++e) out.push_back(function_from_index(n, m, e));
    return out;
}

/// All permutations of B^n in lexicographic table order (n <= 3).
inline std::vector<FunctionTable> enumerate_permutations(int n) {
    require(n <= 3, "enumerate_permutations: n must be <= 3");
    std::uint64_t dom = std::uint64_t{1} << n;
    std::vector<std::uint32_t> perm(dom);
    for (std::uint64_t i = 0; i < dom; ++i) perm[i] = static_cast<std::uint32_t>(i);
    std::vector<FunctionTable> out;
    do {
        out.emplace_back(n, n, perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline FunctionTable random_function(int n, int m, Rng& rng) {
    std::uint64_t dom = std::uint64_t{1} << n;
    std::vector<std::uint32_t> vals(dom);
    for (auto& v : vals) v = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << m));
    return FunctionTable(n, m, std::move(vals));
}

inline FunctionTable random_permutation(int n, Rng& rng) {
    std::uint64_t dom = std::uint64_t{1} << n;
    std::vector<std::uint32_t> vals(dom);
    for (std::uint64_t i = 0; i < dom; ++i) vals[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t i = dom - 1; i > 0; --i) {  // Fisher-Yates
        std::uint64_t j = rng.below(i + 1);
        std::swap(vals[i], vals[j]);
    }
    return FunctionTable(n, n, std::move(vals));
}

/// Cycle decomposition of a permutation. Representatives are minimal and the
/// member list walks the orbit: [x, f(x), ..., f^{r-1}(x)].
struct OrbitDecomposition {
    struct Orbit {
        int length = 0;
        std::uint32_t representative = 0;
        std::vector<std::uint32_t> members;
    };
    int orbit_count = 0;
    std::vector<Orbit> orbits;  // sorted by representative

    int max_orbit_length() const {
        int r = 0;
        for (const auto& o : orbits) r = std::max(r, o.length);
        return r;
    }
};

inline OrbitDecomposition orbit_decomposition(const FunctionTable& f) {
    require(f.is_permutation(), "orbit_decomposition: not a permutation");
    std::uint64_t dom = f.domain_size();
    std::vector<bool> seen(dom, false);
    OrbitDecomposition dec;
    for (std::uint64_t x = 0; x < dom; ++x) {
        if (seen[x]) continue;
        OrbitDecomposition::Orbit orb;
        orb.representative = static_cast<std::uint32_t>(x);
        std::uint32_t cur = static_cast<std::uint32_t>(x);
        do {
            seen[cur] = true;
            orb.members.push_back(cur);
            cur = f(cur);
        } while (cur != x);
        orb.length = static_cast<int>(orb.members.size());
        dec.orbits.push_back(std::move(orb));
    }
    dec.orbit_count = static_cast<int>(dec.orbits.size());
    return dec;
}

}  // namespace qoracle
