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

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "qoracle/common.hpp"

namespace qoracle {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Child seed derived from (master, tag, index). Every seeded experiment
/// derives its streams this way so results are reproducible and independent
/// of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index = 0) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the tag
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t s = master ^ h;
    std::uint64_t a = splitmix64(s);
    s ^= index * 0x9e3779b97f4a7c15ULL;
    std::uint64_t b = splitmix64(s);
    return a ^ (b + 0x632be59bd9b4e019ULL);
}

/// Deterministic generator. Uniform/normal variates are produced with
/// self-contained transforms (no std::*_distribution) so streams are stable
/// across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTau * u2);
        have_spare_ = true;
        return r * std::cos(kTau * u2);
    }

    cxd normal_complex() { return cxd(normal(), normal()); }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        // rejection sampling to avoid modulo bias
        std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % bound;
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Haar-like random unitary: QR of a complex Ginibre matrix with the phase
/// of the R diagonal folded back in.
inline CMatrix haar_unitary(Eigen::Index dim, Rng& rng) {
    CMatrix g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = rng.normal_complex();
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        cxd d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= (a > 0) ? d / a : cxd(1.0, 0.0);
    }
    return q;
}

/// Random unitary built as exp(i H) for a random Hermitian H.
inline CMatrix random_unitary_exp(Eigen::Index dim, Rng& rng) {
    CMatrix h(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        h(j, j) = cxd(rng.normal(), 0.0);
        for (Eigen::Index i = j + 1; i < dim; ++i) {
            cxd z = rng.normal_complex();
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    CVector expl(dim);
    for (Eigen::Index j = 0; j < dim; ++j) expl(j) = std::polar(1.0, es.eigenvalues()(j));
    return es.eigenvectors() * expl.asDiagonal() * es.eigenvectors().adjoint();
}

/// Random normalized state.
inline CVector random_state(Eigen::Index dim, Rng& rng) {
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.normal_complex();
    v.normalize();
    return v;
}

}  // namespace qoracle
