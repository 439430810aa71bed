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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qoracle {

using cxd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kTau = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

// Dense storage is capped at 10 qubits; larger registers go through the
// sparse circuit path.
inline constexpr Eigen::Index kMaxDenseDim = 1024;

/// Violated precondition or broken numeric contract. Maps to exit code 1.
struct contract_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed user input (files, flags, ranges). Maps to exit code 2.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw contract_error(msg);
}

inline void require_input(bool cond, const std::string& msg) {
    if (!cond) throw input_error(msg);
}

inline bool is_power_of_two(std::uint64_t v) {
    return v != 0 && (v & (v - 1)) == 0;
}

inline int log2_exact(std::uint64_t v) {
    require(is_power_of_two(v), "value is not a power of two");
    int k = 0;
    while ((v >> k) != 1) ++k;
    return k;
}

/// Canonicalize an angle to [0, 2*pi).
inline double canonical_phase(double theta) {
    double t = std::fmod(theta, kTau);
    if (t < 0) t += kTau;
    if (t >= kTau) t = 0.0;  // fmod can round up to 2*pi
    return t;
}

/// Circular distance between two phases in [0, 2*pi).
inline double phase_distance(double a, double b) {
    double d = std::abs(canonical_phase(a) - canonical_phase(b));
    return std::min(d, kTau - d);
}

/// Thread budget: min(hardware, QORACLE_THREADS). At least 1.
inline int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("QORACLE_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return static_cast<int>(hw);
}

/// Deterministic parallel loop: fn(i) must write only to its own slot.
/// Results are identical regardless of the thread count.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    int threads = thread_budget();
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t workers = std::min<std::size_t>(threads, count);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace qoracle
