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
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "qoracle/function_table.hpp"
#include "qoracle/linalg.hpp"

namespace qoracle {

// ---------------------------------------------------------------------------
// Fourier eigenstates of the cyclic shift on m bits.
// ---------------------------------------------------------------------------

/// |psi_s> with k-th amplitude 2^{-m/2} exp(-2 pi i s k / 2^m).
inline CVector fourier_state(int m, std::uint64_t s) {
    std::uint64_t dim = std::uint64_t{1} << m;
    require_input(s < dim, "fourier_state: s out of range [0, 2^m)");
    CVector v(static_cast<Eigen::Index>(dim));
    double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::uint64_t k = 0; k < dim; ++k) {
        std::uint64_t sk = (s * k) % dim;  // exact phase via integer reduction
        v(static_cast<Eigen::Index>(k)) = scale * std::polar(1.0, -kTau * static_cast<double>(sk) / static_cast<double>(dim));
    }
    return v;
}

// ---------------------------------------------------------------------------
// The standard oracle: |x>|y> -> |x>|y (+) f(x)> with (+) addition mod 2^m.
// Note this follows the convention of summation modulo 2^m, not bitwise XOR;
// the two agree for m = 1.
// ---------------------------------------------------------------------------

inline CMatrix build_standard(const FunctionTable& f) {
    std::uint64_t dn = f.domain_size(), dm = f.range_size();
    std::uint64_t dim = dn * dm;
    require(static_cast<Eigen::Index>(dim) <= kMaxDenseDim, "build_standard: size cap exceeded");
    CMatrix q = CMatrix::Zero(dim, dim);
    for (std::uint64_t x = 0; x < dn; ++x)
        for (std::uint64_t y = 0; y < dm; ++y) {
            std::uint64_t yp = (y + f(x)) % dm;
            q(x * dm + yp, x * dm + y) = 1.0;
        }
    return q;
}

/// Analytic eigensystem of the standard oracle: eigenvectors |x>|psi_s>
/// labeled (x, s) with phase 2 pi s f(x) / 2^m.
inline EigenSystem standard_eigensystem(const FunctionTable& f) {
    std::uint64_t dn = f.domain_size(), dm = f.range_size();
    std::uint64_t dim = dn * dm;
    require(static_cast<Eigen::Index>(dim) <= kMaxDenseDim, "standard_eigensystem: size cap exceeded");
    EigenSystem sys;
    sys.dim = static_cast<Eigen::Index>(dim);
    sys.phases.resize(dim);
    sys.vectors = CMatrix::Zero(sys.dim, sys.dim);
    sys.labels.resize(dim);
    for (std::uint64_t x = 0; x < dn; ++x) {
        for (std::uint64_t s = 0; s < dm; ++s) {
            std::uint64_t col = x * dm + s;
            CVector psi = fourier_state(f.m, s);
            sys.vectors.block(static_cast<Eigen::Index>(x * dm), static_cast<Eigen::Index>(col), psi.size(), 1) = psi;
            std::uint64_t sf = (s * f(x)) % dm;
            sys.phases[col] = kTau * static_cast<double>(sf) / static_cast<double>(dm);
            sys.labels[col] = Label{static_cast<int>(x), static_cast<int>(s)};
        }
    }
    return sys;
}

// ---------------------------------------------------------------------------
// The complex phase oracle of degree d: |x> -> exp(2 pi i d f(x) / 2^m) |x>.
// Any integer d is accepted; d >= 2^m wraps around.
// ---------------------------------------------------------------------------

inline double complex_phase_angle(const FunctionTable& f, long long d, std::uint64_t x) {
    long long dm = static_cast<long long>(f.range_size());
    long long r = (d % dm) * static_cast<long long>(f(x)) % dm;
    if (r < 0) r += dm;
    return kTau * static_cast<double>(r) / static_cast<double>(dm);
}

inline CMatrix build_complex_phase(const FunctionTable& f, long long d) {
    std::uint64_t dn = f.domain_size();
    require(static_cast<Eigen::Index>(dn) <= kMaxDenseDim, "build_complex_phase: size cap exceeded");
    CMatrix q = CMatrix::Zero(dn, dn);
    for (std::uint64_t x = 0; x < dn; ++x) q(x, x) = std::polar(1.0, complex_phase_angle(f, d, x));
    return q;
}

inline EigenSystem complex_phase_eigensystem(const FunctionTable& f, long long d) {
    std::uint64_t dn = f.domain_size();
    EigenSystem sys;
    sys.dim = static_cast<Eigen::Index>(dn);
    sys.phases.resize(dn);
    sys.vectors = CMatrix::Identity(sys.dim, sys.dim);
    sys.labels.resize(dn);
    for (std::uint64_t x = 0; x < dn; ++x) {
        sys.phases[x] = complex_phase_angle(f, d, x);
        sys.labels[x] = Label{static_cast<int>(x), 0};
    }
    return sys;
}

// ---------------------------------------------------------------------------
// The minimal oracle: |x> -> |f(x)> at permutations, identity otherwise.
// ---------------------------------------------------------------------------

inline bool minimal_is_degenerate(const FunctionTable& f) {
    return !f.is_permutation();
}

/// Permutation matrix with column x carrying a 1 in row f(x); identity at
/// non-permutations (defined behavior, see minimal_is_degenerate).
inline CMatrix build_minimal(const FunctionTable& f) {
    std::uint64_t dn = f.domain_size();
    require(static_cast<Eigen::Index>(dn) <= kMaxDenseDim, "build_minimal: size cap exceeded");
    if (minimal_is_degenerate(f)) return CMatrix::Identity(dn, dn);
    CMatrix q = CMatrix::Zero(dn, dn);
    for (std::uint64_t x = 0; x < dn; ++x) q(f(x), x) = 1.0;
    return q;
}

/// Orbitwise Fourier eigenvectors of a permutation query, labeled
/// (orbit index, s) with phase 2 pi s / r.
inline EigenSystem minimal_eigensystem(const FunctionTable& f) {
    require(f.is_permutation(), "minimal_eigensystem: not a permutation");
    auto dec = orbit_decomposition(f);
    std::uint64_t dn = f.domain_size();
    EigenSystem sys;
    sys.dim = static_cast<Eigen::Index>(dn);
    sys.phases.resize(dn);
    sys.vectors = CMatrix::Zero(sys.dim, sys.dim);
    sys.labels.resize(dn);
    Eigen::Index col = 0;
    for (int l = 0; l < dec.orbit_count; ++l) {
        const auto& orb = dec.orbits[l];
        double scale = 1.0 / std::sqrt(static_cast<double>(orb.length));
        for (int s = 0; s < orb.length; ++s) {
            for (int k = 0; k < orb.length; ++k) {
                std::uint64_t sk = (static_cast<std::uint64_t>(s) * k) % orb.length;
                sys.vectors(orb.members[k], col) =
                    scale * std::polar(1.0, -kTau * static_cast<double>(sk) / static_cast<double>(orb.length));
            }
            std::uint64_t smod = static_cast<std::uint64_t>(s) % orb.length;
            sys.phases[col] = kTau * static_cast<double>(smod) / static_cast<double>(orb.length);
            sys.labels[col] = Label{l, s};
            ++col;
        }
    }
    return sys;
}

/// The same eigensystem with the label (orbit, s) renumbered to
/// (f^s(x_orbit), 0), the identification used when asking whether the phase
/// is a function of f(x).
inline EigenSystem minimal_eigensystem_renumbered(const FunctionTable& f) {
    auto dec = orbit_decomposition(f);
    EigenSystem sys = minimal_eigensystem(f);
    for (std::size_t j = 0; j < sys.labels.size(); ++j) {
        const auto& orb = dec.orbits[sys.labels[j][0]];
        sys.labels[j] = Label{static_cast<int>(orb.members[sys.labels[j][1]]), 0};
    }
    return sys;
}

// ---------------------------------------------------------------------------
// Generic local phase oracle: |x> -> exp(i sum_y c_{x,y} g(f(y)/2^m)) |x>
// with banded coefficients (cyclic distance between x and y at most p).
// ---------------------------------------------------------------------------

enum class GPreset { linear, sine };

inline std::string to_string(GPreset g) { return g == GPreset::linear ? "linear" : "sine"; }

struct GenericLocalPhaseSpec {
    GPreset g = GPreset::linear;
    double derivative_bound = kTau;  // B; exact per preset
    Eigen::MatrixXd coeffs;          // c_{x,y}
    double coeff_bound = 0.0;        // C = max |c_{x,y}|
    int p_bound = 0;                 // band width

    double g_eval(double t) const {
        return g == GPreset::linear ? kTau * t : std::sin(kTau * t);
    }

    static double preset_bound(GPreset) { return kTau; }  // both presets have sup |g'| = 2 pi

    static int cyclic_distance(std::uint64_t x, std::uint64_t y, std::uint64_t dom) {
        std::uint64_t d = x > y ? x - y : y - x;
        return static_cast<int>(std::min(d, dom - d));
    }

    void validate(int n) const {
        std::uint64_t dom = std::uint64_t{1} << n;
        require_input(coeffs.rows() == static_cast<Eigen::Index>(dom) && coeffs.cols() == static_cast<Eigen::Index>(dom),
                      "GenericLocalPhaseSpec: coeffs must be 2^n x 2^n");
        require_input(std::abs(derivative_bound - preset_bound(g)) <= 1e-12,
                      "GenericLocalPhaseSpec: B must equal the preset derivative bound");
        double cmax = coeffs.size() == 0 ? 0.0 : coeffs.cwiseAbs().maxCoeff();
        require_input(std::abs(cmax - coeff_bound) <= 1e-12, "GenericLocalPhaseSpec: C must equal max |c_{x,y}|");
        require_input(p_bound >= 0, "GenericLocalPhaseSpec: p_bound must be >= 0");
        for (std::uint64_t x = 0; x < dom; ++x)
            for (std::uint64_t y = 0; y < dom; ++y)
                if (cyclic_distance(x, y, dom) > p_bound)
                    require_input(coeffs(x, y) == 0.0, "GenericLocalPhaseSpec: band condition violated");
    }

    /// Diagonal band with constant value c on the main diagonal.
    static GenericLocalPhaseSpec diagonal(int n, double c, GPreset preset = GPreset::linear) {
        GenericLocalPhaseSpec s;
        s.g = preset;
        s.derivative_bound = preset_bound(preset);
        std::uint64_t dom = std::uint64_t{1} << n;
        s.coeffs = Eigen::MatrixXd::Identity(dom, dom) * c;
        s.coeff_bound = std::abs(c);
        s.p_bound = 0;
        return s;
    }
};

inline double glp_phase_angle(const GenericLocalPhaseSpec& spec, const FunctionTable& f, std::uint64_t x) {
    double phi = 0.0;
    std::uint64_t dom = f.domain_size();
    double dm = static_cast<double>(f.range_size());
    for (std::uint64_t y = 0; y < dom; ++y) {
        double c = spec.coeffs(x, y);
        if (c != 0.0) phi += c * spec.g_eval(static_cast<double>(f(y)) / dm);
    }
    return canonical_phase(phi);
}

inline CMatrix build_generic_local_phase(const GenericLocalPhaseSpec& spec, const FunctionTable& f) {
    spec.validate(f.n);
    std::uint64_t dn = f.domain_size();
    require(static_cast<Eigen::Index>(dn) <= kMaxDenseDim, "build_generic_local_phase: size cap exceeded");
    CMatrix q = CMatrix::Zero(dn, dn);
    for (std::uint64_t x = 0; x < dn; ++x) q(x, x) = std::polar(1.0, glp_phase_angle(spec, f, x));
    return q;
}

inline EigenSystem glp_eigensystem(const GenericLocalPhaseSpec& spec, const FunctionTable& f) {
    spec.validate(f.n);
    std::uint64_t dn = f.domain_size();
    EigenSystem sys;
    sys.dim = static_cast<Eigen::Index>(dn);
    sys.phases.resize(dn);
    sys.vectors = CMatrix::Identity(sys.dim, sys.dim);
    sys.labels.resize(dn);
    for (std::uint64_t x = 0; x < dn; ++x) {
        sys.phases[x] = glp_phase_angle(spec, f, x);
        sys.labels[x] = Label{static_cast<int>(x), 0};
    }
    return sys;
}

// ---------------------------------------------------------------------------
// Oracle instances: one (n, m) slice of an oracle family, as the uniform
// handle used by circuits, classification and the bound evaluators.
// ---------------------------------------------------------------------------

enum class OracleKind { standard, complex_phase, minimal, generic_local_phase };

inline std::string to_string(OracleKind k) {
    switch (k) {
        case OracleKind::standard: return "std";
        case OracleKind::complex_phase: return "cp";
        case OracleKind::minimal: return "min";
        case OracleKind::generic_local_phase: return "glp";
    }
    return "?";
}

inline OracleKind oracle_kind_from_string(const std::string& s) {
    if (s == "std") return OracleKind::standard;
    if (s == "cp") return OracleKind::complex_phase;
    if (s == "min") return OracleKind::minimal;
    if (s == "glp") return OracleKind::generic_local_phase;
    throw input_error("unknown oracle kind: " + s + " (expected std|cp|min|glp)");
}

/// The labeled phase map Theta(f) of an eigensystem.
using PhaseAssignment = std::map<Label, double>;

inline PhaseAssignment phases_of(const EigenSystem& sys) {
    require(!sys.labels.empty(), "phases_of: eigensystem carries no labels");
    PhaseAssignment out;
    for (std::size_t j = 0; j < sys.labels.size(); ++j) out[sys.labels[j]] = canonical_phase(sys.phases[j]);
    return out;
}

struct QueryBuild {
    CMatrix matrix;
    bool degenerate = false;  // minimal oracle queried off the permutations
};

/// How a query acts on basis indices of its native register, for the sparse
/// circuit path: a classical bijection, a diagonal phase, or dense-only.
enum class QueryAction { classical, diagonal, dense };

struct OracleInstance {
    std::string id;  // "std", "cp", "min", "glp", or a synthetic tag
    int n = 0;
    int m = 0;
    int query_bits = 0;                // native register width of a query
    bool fixed_eigenbasis = false;     // eigenvectors independent of f
    QueryAction action = QueryAction::dense;

    std::function<QueryBuild(const FunctionTable&)> build;
    std::function<EigenSystem(const FunctionTable&)> analytic;  // may be empty
    // classical action on a front-register basis index (power +1/-1)
    std::function<std::uint64_t(const FunctionTable&, std::uint64_t, int)> index_map;
    // diagonal action: phase at a front-register basis index
    std::function<double(const FunctionTable&, std::uint64_t)> diag_phase;

    CMatrix query(const FunctionTable& f) const { return build(f).matrix; }
    bool has_analytic() const { return static_cast<bool>(analytic); }
};

inline OracleInstance make_standard_instance(int n, int m) {
    OracleInstance inst;
    inst.id = "std";
    inst.n = n;
    inst.m = m;
    inst.query_bits = n + m;
    inst.fixed_eigenbasis = true;
    inst.action = QueryAction::classical;
    inst.build = [](const FunctionTable& f) { return QueryBuild{build_standard(f), false}; };
    inst.analytic = [](const FunctionTable& f) { return standard_eigensystem(f); };
    inst.index_map = [](const FunctionTable& f, std::uint64_t z, int power) {
        std::uint64_t dm = f.range_size();
        std::uint64_t x = z / dm, y = z % dm;
        std::uint64_t yp = power >= 0 ? (y + f(x)) % dm : (y + dm - f(x) % dm) % dm;
        return x * dm + yp;
    };
    return inst;
}

inline OracleInstance make_complex_phase_instance(int n, int m, long long d) {
    OracleInstance inst;
    inst.id = "cp";
    inst.n = n;
    inst.m = m;
    inst.query_bits = n;
    inst.fixed_eigenbasis = true;
    inst.action = QueryAction::diagonal;
    inst.build = [d](const FunctionTable& f) { return QueryBuild{build_complex_phase(f, d), false}; };
    inst.analytic = [d](const FunctionTable& f) { return complex_phase_eigensystem(f, d); };
    inst.diag_phase = [d](const FunctionTable& f, std::uint64_t x) { return complex_phase_angle(f, d, x); };
    return inst;
}

inline OracleInstance make_minimal_instance(int n) {
    OracleInstance inst;
    inst.id = "min";
    inst.n = n;
    inst.m = n;
    inst.query_bits = n;
    inst.fixed_eigenbasis = false;
    inst.action = QueryAction::classical;
    inst.build = [](const FunctionTable& f) { return QueryBuild{build_minimal(f), minimal_is_degenerate(f)}; };
    inst.analytic = [](const FunctionTable& f) { return minimal_eigensystem(f); };
    inst.index_map = [](const FunctionTable& f, std::uint64_t z, int power) -> std::uint64_t {
        if (minimal_is_degenerate(f)) return z;
        if (power >= 0) return f(z);
        for (std::uint64_t x = 0; x < f.domain_size(); ++x)
            if (f(x) == z) return x;
        throw contract_error("minimal index_map: inverse lookup failed");
    };
    return inst;
}

inline OracleInstance make_glp_instance(int n, int m, GenericLocalPhaseSpec spec) {
    spec.validate(n);
    OracleInstance inst;
    inst.id = "glp";
    inst.n = n;
    inst.m = m;
    inst.query_bits = n;
    inst.fixed_eigenbasis = true;
    inst.action = QueryAction::diagonal;
    inst.build = [spec](const FunctionTable& f) { return QueryBuild{build_generic_local_phase(spec, f), false}; };
    inst.analytic = [spec](const FunctionTable& f) { return glp_eigensystem(spec, f); };
    inst.diag_phase = [spec](const FunctionTable& f, std::uint64_t x) { return glp_phase_angle(spec, f, x); };
    return inst;
}

struct OracleParams {
    long long d = 1;  // complex phase degree
    std::optional<GenericLocalPhaseSpec> glp;
};

inline OracleInstance make_instance(OracleKind kind, int n, int m, const OracleParams& params = {}) {
    switch (kind) {
        case OracleKind::standard: return make_standard_instance(n, m);
        case OracleKind::complex_phase: return make_complex_phase_instance(n, m, params.d);
        case OracleKind::minimal:
            require_input(n == m, "minimal oracle: nondegenerate instances need n == m");
            return make_minimal_instance(n);
        case OracleKind::generic_local_phase:
            require_input(params.glp.has_value(), "glp oracle: spec parameters required");
            return make_glp_instance(n, m, *params.glp);
    }
    throw input_error("make_instance: unknown kind");
}

/// The labeled phase map of the named oracle's analytic eigensystem.
inline PhaseAssignment oracle_phases(OracleKind kind, const FunctionTable& f, const OracleParams& params = {}) {
    switch (kind) {
        case OracleKind::standard: return phases_of(standard_eigensystem(f));
        case OracleKind::complex_phase: return phases_of(complex_phase_eigensystem(f, params.d));
        case OracleKind::minimal: return phases_of(minimal_eigensystem(f));
        case OracleKind::generic_local_phase:
            require_input(params.glp.has_value(), "oracle_phases: glp spec parameters required");
            return phases_of(glp_eigensystem(*params.glp, f));
    }
    throw input_error("oracle_phases: unknown kind");
}

}  // namespace qoracle
