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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "qoracle/bounds.hpp"
#include "qoracle/circuit.hpp"
#include "qoracle/classification.hpp"
#include "qoracle/optimizer.hpp"
#include "qoracle/trig_poly.hpp"

namespace qoracle {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Deterministic dumping: object keys are already sorted (nlohmann's default
// map) and every finite double is printed with 17 significant digits, so a
// payload built from the same numbers is byte-identical across runs.
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
    require(std::isfinite(v), "json dump: non-finite number");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void dump_json_to(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                dump_json_to(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                dump_json_to(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float:
            out += format_double(j.get<double>());
            break;
        default:
            out += j.dump();
    }
}

inline std::string dump_json(const json& j) {
    std::string out;
    dump_json_to(j, out);
    return out;
}

/// Write via a temp file and rename, so readers never see partial output.
inline void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require_input(out.good(), "cannot open output file: " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require_input(in.good(), "cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error("failed to parse " + path + ": " + e.what());
    }
    return j;
}

// ---------------------------------------------------------------------------
// Value serializers. Complex scalars are always two-element [re, im] arrays.
// ---------------------------------------------------------------------------

inline json to_json(cxd z) { return json::array({z.real(), z.imag()}); }

inline cxd complex_from_json(const json& j) {
    require_input(j.is_array() && j.size() == 2, "complex values must be [re, im]");
    return cxd(j[0].get<double>(), j[1].get<double>());
}

inline json to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix matrix_from_json(const json& j) {
    require_input(j.is_array() && !j.empty(), "matrix must be a non-empty array of rows");
    Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        require_input(j[r].is_array() && static_cast<Eigen::Index>(j[r].size()) == cols, "ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
    }
    return m;
}

inline json to_json(const CVector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_json(v(i)));
    return arr;
}

inline json to_json(const FunctionTable& f) {
    return json{{"n", f.n}, {"m", f.m}, {"table", f.values}};
}

inline FunctionTable function_from_json(const json& j) {
    require_input(j.contains("n") && j.contains("m") && j.contains("table"),
                  "function table needs fields n, m, table");
    return FunctionTable(j["n"].get<int>(), j["m"].get<int>(), j["table"].get<std::vector<std::uint32_t>>());
}

inline json to_json(const Label& l) { return json::array({l[0], l[1]}); }

inline json to_json(const EigenSystem& sys, bool include_vectors = true) {
    json j{{"dim", sys.dim}, {"phases", sys.phases}};
    if (!sys.labels.empty()) {
        json labels = json::array();
        for (const auto& l : sys.labels) labels.push_back(to_json(l));
        j["labels"] = std::move(labels);
    }
    if (include_vectors) j["vectors"] = to_json(sys.vectors);
    return j;
}

inline json to_json(const PhaseAssignment& pa) {
    json arr = json::array();
    for (const auto& [label, phase] : pa) arr.push_back(json{{"label", to_json(label)}, {"phase", phase}});
    return arr;
}

inline json to_json(const OrbitDecomposition& dec) {
    json orbits = json::array();
    for (const auto& o : dec.orbits)
        orbits.push_back(json{{"length", o.length}, {"representative", o.representative}, {"members", o.members}});
    return json{{"orbit_count", dec.orbit_count}, {"orbits", std::move(orbits)}};
}

inline json to_json(const TrigPoly& t) {
    json terms = json::array();
    for (const auto& [freq, c] : t.terms) terms.push_back(json{{"freq", freq}, {"c", to_json(c)}});
    return json{{"D", t.var_count}, {"terms", std::move(terms)}};
}

inline TrigPoly trig_poly_from_json(const json& j) {
    require_input(j.contains("D") && j.contains("terms"), "trig polynomial needs fields D, terms");
    TrigPoly t = TrigPoly::zero(j["D"].get<int>());
    for (const auto& term : j["terms"]) {
        auto freq = term["freq"].get<std::vector<std::int32_t>>();
        require_input(static_cast<int>(freq.size()) == t.var_count, "trig polynomial term arity mismatch");
        t.terms[freq] += complex_from_json(term["c"]);
    }
    t.prune();
    return t;
}

inline json to_json(const GenericLocalPhaseSpec& s) {
    json coeffs = json::array();
    for (Eigen::Index r = 0; r < s.coeffs.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < s.coeffs.cols(); ++c) row.push_back(s.coeffs(r, c));
        coeffs.push_back(std::move(row));
    }
    return json{{"g", to_string(s.g)}, {"B", s.derivative_bound}, {"C", s.coeff_bound},
                {"p_bound", s.p_bound}, {"coeffs", std::move(coeffs)}};
}

inline GenericLocalPhaseSpec glp_spec_from_json(const json& j) {
    GenericLocalPhaseSpec s;
    std::string g = j.value("g", "linear");
    if (g == "linear")
        s.g = GPreset::linear;
    else if (g == "sine")
        s.g = GPreset::sine;
    else
        throw input_error("unknown g preset: " + g + " (expected linear|sine)");
    s.derivative_bound = j.value("B", GenericLocalPhaseSpec::preset_bound(s.g));
    s.coeff_bound = j["C"].get<double>();
    s.p_bound = j["p_bound"].get<int>();
    const auto& rows = j["coeffs"];
    require_input(rows.is_array() && !rows.empty(), "glp coeffs must be a matrix");
    s.coeffs.resize(rows.size(), rows[0].size());
    for (Eigen::Index r = 0; r < s.coeffs.rows(); ++r)
        for (Eigen::Index c = 0; c < s.coeffs.cols(); ++c) s.coeffs(r, c) = rows[r][c].get<double>();
    return s;
}

// ---------------------------------------------------------------------------
// Circuits. Functional gates (permutation/diagonal) serialize as tables when
// the system is small enough, and as named opaque gates otherwise.
// ---------------------------------------------------------------------------

inline json to_json(const CircuitSpec& c) {
    json gates = json::array();
    std::uint64_t dim = c.dim();
    bool small = c.system_bits <= 10;
    for (const auto& g : c.gates) {
        if (const auto* q = std::get_if<QueryGate>(&g)) {
            gates.push_back(json{{"kind", "query"}, {"power", q->power}});
        } else if (const auto* d = std::get_if<DenseGate>(&g)) {
            gates.push_back(json{{"kind", "constant"}, {"matrix", to_json(d->u)}});
        } else if (const auto* fr = std::get_if<FrontGate>(&g)) {
            gates.push_back(json{{"kind", "front"}, {"bits", fr->bits}, {"matrix", to_json(fr->u)}});
        } else if (const auto* p = std::get_if<PermGate>(&g)) {
            json entry{{"kind", "perm"}, {"desc", p->desc}};
            if (small) {
                std::vector<std::uint64_t> table(dim);
                for (std::uint64_t z = 0; z < dim; ++z) table[z] = p->fwd(z);
                entry["table"] = std::move(table);
            } else {
                entry["opaque"] = true;
            }
            gates.push_back(std::move(entry));
        } else {
            const auto& di = std::get<DiagGate>(g);
            json entry{{"kind", "diag"}, {"desc", di.desc}};
            if (small) {
                std::vector<double> phases(dim);
                for (std::uint64_t z = 0; z < dim; ++z) phases[z] = di.phase(z);
                entry["phases"] = std::move(phases);
            } else {
                entry["opaque"] = true;
            }
            gates.push_back(std::move(entry));
        }
    }
    json j{{"M", c.system_bits}, {"gates", std::move(gates)}};
    if (!c.oracle_slot.empty()) j["oracle"] = c.oracle_slot;
    if (!c.simulates.empty()) j["simulates"] = c.simulates;
    return j;
}

inline CircuitSpec circuit_from_json(const json& j) {
    CircuitSpec c;
    require_input(j.contains("M") && j.contains("gates"), "circuit needs fields M, gates");
    c.system_bits = j["M"].get<int>();
    require_input(c.system_bits >= 1 && c.system_bits <= kMaxStateBits, "circuit M out of range");
    c.oracle_slot = j.value("oracle", "");
    c.simulates = j.value("simulates", "");
    for (const auto& g : j["gates"]) {
        std::string kind = g.at("kind").get<std::string>();
        if (kind == "query") {
            int power = g.at("power").get<int>();
            require_input(power == 1 || power == -1, "query power must be +1 or -1");
            c.push_query(power);
        } else if (kind == "constant") {
            CMatrix u = matrix_from_json(g.at("matrix"));
            require_input(is_unitary(u), "constant gate is not unitary");
            c.push_constant(std::move(u));
        } else if (kind == "front") {
            CMatrix u = matrix_from_json(g.at("matrix"));
            require_input(is_unitary(u), "front gate is not unitary");
            c.gates.push_back(FrontGate{g.at("bits").get<int>(), std::move(u)});
        } else if (kind == "perm") {
            auto table = std::make_shared<std::vector<std::uint64_t>>(g.at("table").get<std::vector<std::uint64_t>>());
            require_input(table->size() == c.dim(), "perm table size must be 2^M");
            auto inverse = std::make_shared<std::vector<std::uint64_t>>(table->size());
            std::vector<bool> seen(table->size(), false);
            for (std::uint64_t z = 0; z < table->size(); ++z) {
                std::uint64_t t = (*table)[z];
                require_input(t < table->size() && !seen[t], "perm table is not a bijection");
                seen[t] = true;
                (*inverse)[t] = z;
            }
            c.gates.push_back(PermGate{g.value("desc", "perm"),
                                       [table](std::uint64_t z) { return (*table)[z]; },
                                       [inverse](std::uint64_t z) { return (*inverse)[z]; }});
        } else if (kind == "diag") {
            auto phases = std::make_shared<std::vector<double>>(g.at("phases").get<std::vector<double>>());
            require_input(phases->size() == c.dim(), "diag phase table size must be 2^M");
            c.gates.push_back(DiagGate{g.value("desc", "diag"), [phases](std::uint64_t z) { return (*phases)[z]; }});
        } else {
            throw input_error("unknown gate kind: " + kind);
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

inline json to_json(const SimulationReport& r) {
    return json{{"target", r.target},        {"per_f_errors", r.per_f_errors}, {"max_error", r.max_error},
                {"query_count", r.query_count}, {"exact", r.exact},            {"w_as_constant", r.w_as_constant},
                {"note", r.note}};
}

inline json to_json(const BoundReport& r) {
    json j{{"bound", r.bound},
           {"witness_label", to_json(r.witness)},
           {"n_queries", r.query_count},
           {"per_f_errors", r.per_f_errors}};
    j["analytic_N_min"] = r.analytic_n_min ? json(*r.analytic_n_min) : json(nullptr);
    return j;
}

inline json to_json(const ClassificationReport& r, bool include_witnesses = false) {
    json j{{"n", r.n},
           {"m", r.m},
           {"oracle", r.oracle_id},
           {"enumerated_function_count", r.enumerated_function_count},
           {"restricted_to_permutations", r.restricted_to_permutations},
           {"nonentangled", r.nonentangled.verdict == Verdict::yes},
           {"nonentangled_verdict", to_string(r.nonentangled.verdict)},
           {"common_eigenbasis", r.common_eigenbasis.simple},
           {"basic", r.basic.basic},
           {"simple", r.simple}};
    if (!r.nonentangled.note.empty()) j["nonentangled_note"] = r.nonentangled.note;
    if (!r.basic.note.empty()) j["basic_note"] = r.basic.note;
    if (r.basic.basic) {
        json tables = json::array();
        for (const auto& [label, table] : r.basic.g_tables) {
            json entries = json::array();
            for (const auto& [v, phase] : table) entries.push_back(json{{"value", v}, {"phase", phase}});
            tables.push_back(json{{"label", to_json(label)}, {"g", std::move(entries)}});
        }
        j["g_tables"] = std::move(tables);
    }
    if (include_witnesses) {
        if (r.common_eigenbasis.simple) j["common_basis"] = to_json(r.common_eigenbasis.common_basis);
        json ws = json::array();
        for (const auto& w : r.nonentangled.witnesses) ws.push_back(to_json(w));
        j["nonentangled_witnesses"] = std::move(ws);
    }
    return j;
}

inline json to_json(const OptimizationResult& r, bool include_circuit = true) {
    json restarts = json::array();
    for (const auto& s : r.restarts)
        restarts.push_back(json{{"seed", s.seed},
                                {"final_error", s.final_error},
                                {"final_surrogate", s.final_surrogate},
                                {"iterations", s.iterations}});
    json j{{"best_error", r.best_error},
           {"surrogate", r.best_surrogate},
           {"restarts", std::move(restarts)},
           {"powers", r.powers},
           {"master_seed", r.master_seed}};
    if (include_circuit) j["circuit"] = to_json(r.best_circuit);
    return j;
}

// ---------------------------------------------------------------------------
// CSV projection: one table, column names from the first record.
// ---------------------------------------------------------------------------

inline std::string csv_from_records(const std::vector<std::vector<std::pair<std::string, std::string>>>& records) {
    if (records.empty()) return "";
    std::string out;
    for (std::size_t c = 0; c < records[0].size(); ++c) {
        if (c) out += ',';
        out += records[0][c].first;
    }
    out += '\n';
    for (const auto& rec : records) {
        for (std::size_t c = 0; c < rec.size(); ++c) {
            if (c) out += ',';
            out += rec[c].second;
        }
        out += '\n';
    }
    return out;
}

}  // namespace qoracle
