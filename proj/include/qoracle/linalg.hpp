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
#include <array>
#include <numeric>
#include <vector>

#include "qoracle/common.hpp"

namespace qoracle {

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kEigResidualTol = 1e-9;
inline constexpr double kPhaseClusterTol = 1e-8;

/// Eigenvector label. Meaning is oracle specific: (x, s) for the standard
/// oracle, (orbit, s) for the minimal oracle, (x, 0) for diagonal queries.
using Label = std::array<int, 2>;

inline double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_unitary(const CMatrix& u, double tol = kUnitaryTol) {
    if (u.rows() != u.cols()) return false;
    CMatrix d = u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols());
    return max_abs(d) <= tol;
}

inline void require_unitary(const CMatrix& u, const std::string& who) {
    require(is_unitary(u), who + ": matrix is not unitary to 1e-10");
}

/// Kronecker product; `a` indexes the front register (high-order bits).
inline CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    require(is_power_of_two(a.rows()) && a.rows() == a.cols(), "tensor: front dim must be a power of two");
    require(is_power_of_two(b.rows()) && b.rows() == b.cols(), "tensor: back dim must be a power of two");
    Eigen::Index ad = a.rows(), bd = b.rows();
    require(ad * bd <= kMaxDenseDim, "tensor: size cap exceeded (dim > 1024)");
    CMatrix out(ad * bd, ad * bd);
    for (Eigen::Index i = 0; i < ad; ++i)
        for (Eigen::Index j = 0; j < ad; ++j) out.block(i * bd, j * bd, bd, bd) = a(i, j) * b;
    return out;
}

/// Lift u to target_dim by tensoring identity onto the back register.
/// No-op when target_dim == u.dim.
inline CMatrix lift(const CMatrix& u, Eigen::Index target_dim) {
    require(u.rows() == u.cols() && is_power_of_two(u.rows()), "lift: dim must be a power of two");
    require(target_dim <= kMaxDenseDim, "lift: size cap exceeded (dim > 1024)");
    require(target_dim >= u.rows() && target_dim % u.rows() == 0 && is_power_of_two(target_dim / u.rows()),
            "lift: target_dim is not a power-of-two multiple of dim");
    if (target_dim == u.rows()) return u;
    return tensor(u, CMatrix::Identity(target_dim / u.rows(), target_dim / u.rows()));
}

/// Largest singular value, via the top eigenvalue of A^dagger A.
inline double op_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    CMatrix g = a.adjoint() * a;
    g = cxd(0.5, 0.0) * (g + CMatrix(g.adjoint()));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
    double top = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(0.0, top));
}

/// Full eigensystem of a unitary matrix.
struct EigenSystem {
    Eigen::Index dim = 0;
    std::vector<double> phases;  // theta_j in [0, 2*pi), clustered
    CMatrix vectors;             // orthonormal eigenvectors as columns
    std::vector<Label> labels;   // optional (x, i) tags; empty when numeric

    cxd eigenvalue(Eigen::Index j) const { return std::polar(1.0, phases[j]); }

    /// Largest residual ||U v_j - e^{i theta_j} v_j||_2 against a source matrix.
    double max_residual(const CMatrix& u) const {
        double worst = 0.0;
        for (Eigen::Index j = 0; j < dim; ++j) {
            double r = (u * vectors.col(j) - eigenvalue(j) * vectors.col(j)).norm();
            worst = std::max(worst, r);
        }
        return worst;
    }

    /// Largest off-diagonal Gram entry |<v_j, v_k>|, j != k.
    double max_gram_offdiag() const {
        CMatrix g = vectors.adjoint() * vectors - CMatrix::Identity(dim, dim);
        return max_abs(g);
    }

    Eigen::Index index_of(const Label& l) const {
        for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(labels.size()); ++j)
            if (labels[j] == l) return j;
        throw contract_error("EigenSystem: unknown label");
    }
};

/// Eigendecomposition of a unitary matrix with degeneracy handling: phases
/// within 1e-8 of each other (circularly) form one cluster and get a common
/// representative phase plus an orthonormal basis of their joint eigenspace.
inline EigenSystem eig_unitary(const CMatrix& u) {
    require(u.rows() == u.cols() && u.rows() >= 1, "eig_unitary: square matrix required");
    require(u.rows() <= kMaxDenseDim, "eig_unitary: size cap exceeded (dim > 1024)");
    require_unitary(u, "eig_unitary");

    Eigen::Index dim = u.rows();
    Eigen::ComplexEigenSolver<CMatrix> es(u);
    require(es.info() == Eigen::Success, "eig_unitary: eigensolver failed");

    // Phases near 2*pi are wrapped to small negatives so clusters straddling
    // the branch cut stay together.
    struct Ent {
        double phase;
        Eigen::Index col;
    };
    std::vector<Ent> ents(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        double t = canonical_phase(std::arg(es.eigenvalues()(j)));
        if (t > kTau - kPhaseClusterTol) t -= kTau;
        ents[j] = {t, j};
    }
    std::sort(ents.begin(), ents.end(), [](const Ent& a, const Ent& b) {
        return a.phase < b.phase || (a.phase == b.phase && a.col < b.col);
    });

    EigenSystem sys;
    sys.dim = dim;
    sys.phases.resize(dim);
    sys.vectors.resize(dim, dim);

    Eigen::Index pos = 0;
    while (pos < dim) {
        Eigen::Index end = pos + 1;
        while (end < dim && ents[end].phase - ents[end - 1].phase <= kPhaseClusterTol) ++end;
        Eigen::Index k = end - pos;
        CMatrix block(dim, k);
        double mean = 0.0;
        for (Eigen::Index t = 0; t < k; ++t) {
            block.col(t) = es.eigenvectors().col(ents[pos + t].col);
            mean += ents[pos + t].phase;
        }
        mean = canonical_phase(mean / static_cast<double>(k));
        // orthonormalize within the cluster
        Eigen::HouseholderQR<CMatrix> qr(block);
        CMatrix q = qr.householderQ() * CMatrix::Identity(dim, k);
        for (Eigen::Index t = 0; t < k; ++t) {
            sys.phases[pos + t] = mean;
            sys.vectors.col(pos + t) = q.col(t);
        }
        pos = end;
    }

    require(sys.max_residual(u) <= kEigResidualTol, "eig_unitary: residual contract violated");
    require(sys.max_gram_offdiag() <= kEigResidualTol, "eig_unitary: orthonormality contract violated");
    return sys;
}

/// Eigensystem of u tensor I_{2^extra}: each (x, i) eigenvector is tensored
/// with the computational basis of the appended register; phases repeat.
inline EigenSystem lift_eigensystem(const EigenSystem& eig, Eigen::Index target_dim) {
    require(target_dim % eig.dim == 0 && is_power_of_two(target_dim / eig.dim),
            "lift_eigensystem: bad target dim");
    Eigen::Index extra = target_dim / eig.dim;
    if (extra == 1) return eig;
    EigenSystem out;
    out.dim = target_dim;
    out.phases.resize(target_dim);
    out.vectors = CMatrix::Zero(target_dim, target_dim);
    bool labeled = !eig.labels.empty();
    if (labeled) out.labels.resize(target_dim);
    for (Eigen::Index j = 0; j < eig.dim; ++j) {
        for (Eigen::Index b = 0; b < extra; ++b) {
            Eigen::Index col = j * extra + b;
            out.phases[col] = eig.phases[j];
            for (Eigen::Index r = 0; r < eig.dim; ++r) out.vectors(r * extra + b, col) = eig.vectors(r, j);
            if (labeled) out.labels[col] = Label{eig.labels[j][0], eig.labels[j][1] * static_cast<int>(extra) + static_cast<int>(b)};
        }
    }
    return out;
}

}  // namespace qoracle
