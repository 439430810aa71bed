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

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "qoracle/cli_app.hpp"

using namespace qoracle;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("qoracle-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

int run(std::initializer_list<std::string> args) { return cli::run_command(std::vector<std::string>(args)); }

}  // namespace

TEST_CASE("oracle eig emits labeled phases for the minimal oracle") {
    TempDir dir;
    write_file(dir.file("perm.json"), R"({"n":2,"m":2,"table":[1,2,3,0]})");
    std::string out = dir.file("eig.json");
    REQUIRE(run({"oracle", "eig", "--kind", "min", "--fn", dir.file("perm.json"), "--out", out}) == 0);
    json doc = load_json_file(out);
    REQUIRE(doc["meta"]["tool"] == "qoracle");
    REQUIRE(doc["meta"]["config"]["kind"] == "min");
    REQUIRE(doc["meta"].contains("duration_ms"));
    REQUIRE(doc["meta"].contains("seed"));
    auto labels = doc["payload"]["eigensystem"]["labels"];
    REQUIRE(labels.size() == 4);
    REQUIRE(labels[1][0] == 0);
    REQUIRE(labels[1][1] == 1);
    REQUIRE(doc["payload"]["eigensystem"]["phases"][1].get<double>() == Catch::Approx(kPi / 2).margin(1e-12));
}

TEST_CASE("bound glp matches the closed form") {
    TempDir dir;
    std::string out = dir.file("glp.json");
    REQUIRE(run({"bound", "glp", "--m", "3", "--delta", "0.1", "--g", "linear", "--C", "1", "--out", out}) == 0);
    json doc = load_json_file(out);
    REQUIRE(doc["payload"]["N_min"] == 3);
}

TEST_CASE("classify reports the oracle types") {
    TempDir dir;
    std::string out = dir.file("classify.json");
    REQUIRE(run({"classify", "--kind", "std", "--n", "1", "--m", "1", "--out", out}) == 0);
    json doc = load_json_file(out);
    REQUIRE(doc["payload"]["simple"] == true);
    REQUIRE(doc["payload"]["basic"] == true);
    REQUIRE(doc["payload"]["nonentangled"] == true);
}

TEST_CASE("unknown subcommand exits with code 2") {
    REQUIRE(run({"frobnicate"}) == 2);
    REQUIRE(run({"oracle", "build"}) == 2);  // missing required --fn
}

TEST_CASE("bad input files exit with code 2") {
    TempDir dir;
    write_file(dir.file("broken.json"), "{not json");
    REQUIRE(run({"oracle", "eig", "--kind", "min", "--fn", dir.file("broken.json")}) == 2);
    write_file(dir.file("badrange.json"), R"({"n":1,"m":1,"table":[5,0]})");
    REQUIRE(run({"oracle", "eig", "--kind", "min", "--fn", dir.file("badrange.json")}) == 2);
}

TEST_CASE("contract violations exit with code 1") {
    TempDir dir;
    // a non-permutation has no minimal eigensystem
    write_file(dir.file("nonperm.json"), R"({"n":1,"m":1,"table":[0,0]})");
    REQUIRE(run({"oracle", "eig", "--kind", "min", "--fn", dir.file("nonperm.json")}) == 1);
}

TEST_CASE("payloads are byte-reproducible across runs") {
    TempDir dir;
    write_file(dir.file("perm.json"), R"({"n":2,"m":2,"table":[1,0,3,2]})");
    std::string out1 = dir.file("a.json"), out2 = dir.file("b.json");
    REQUIRE(run({"simulate", "min-via-std", "--fn", dir.file("perm.json"), "--out", out1}) == 0);
    REQUIRE(run({"simulate", "min-via-std", "--fn", dir.file("perm.json"), "--out", out2}) == 0);
    json a = load_json_file(out1), b = load_json_file(out2);
    REQUIRE(dump_json(a["payload"]) == dump_json(b["payload"]));
    REQUIRE(a["payload"]["report"]["exact"] == true);
}

TEST_CASE("simulate std-via-min reports two queries") {
    TempDir dir;
    std::string out = dir.file("svm.json");
    REQUIRE(run({"simulate", "std-via-min", "--n", "2", "--out", out}) == 0);
    json doc = load_json_file(out);
    REQUIRE(doc["payload"]["query_count"] == 2);
    REQUIRE(doc["payload"]["report"]["exact"] == true);
}

TEST_CASE("degree trace respects the query budget") {
    TempDir dir;
    std::string out = dir.file("trace.json");
    REQUIRE(run({"degree", "trace", "--kind", "std", "--n", "1", "--m", "1", "--queries", "3", "--seed", "7",
                 "--out", out}) == 0);
    json doc = load_json_file(out);
    REQUIRE(doc["payload"]["degree_bound_held"] == true);
    REQUIRE(doc["payload"]["final_degree"].get<int>() <= 3);
    REQUIRE(doc["payload"]["numeric_check_deviation"].get<double>() <= 1e-9);
}

TEST_CASE("bound lemma1 and mainthm run from circuit files") {
    TempDir dir;
    // identity circuit on one qubit
    write_file(dir.file("id.json"), R"({"M":1,"gates":[],"oracle":"cp"})");
    write_file(dir.file("f.json"), R"({"n":1,"m":1,"table":[1,0]})");
    std::string out = dir.file("lemma.json");
    REQUIRE(run({"bound", "lemma1", "--kind1", "cp", "--kind2", "cp", "--circuit", dir.file("id.json"), "--fn",
                 dir.file("f.json"), "--out", out}) == 0);
    json doc = load_json_file(out);
    REQUIRE(doc["payload"]["bound"].get<double>() == Catch::Approx(2.0).margin(1e-12));

    write_file(dir.file("id4.json"), R"({"M":4,"gates":[],"oracle":"cp"})");
    std::string out2 = dir.file("thm.json");
    REQUIRE(run({"bound", "mainthm", "--kind1", "cp", "--kind2", "std", "--circuit", dir.file("id4.json"), "--n",
                 "1", "--m", "3", "--out", out2}) == 0);
    json doc2 = load_json_file(out2);
    REQUIRE(doc2["payload"]["bound"].get<double>() >= 0.99);
}

TEST_CASE("bound bernstein evaluates the ratio") {
    TempDir dir;
    write_file(dir.file("poly.json"), R"({"D":1,"terms":[{"freq":[1],"c":[1,0]}]})");
    std::string out = dir.file("bern.json");
    REQUIRE(run({"bound", "bernstein", "--poly", dir.file("poly.json"), "--theta1", "0", "--theta2", "1.5707963",
                 "--out", out}) == 0);
    json doc = load_json_file(out);
    REQUIRE(doc["payload"]["ratio_le_degree"] == true);
    REQUIRE(doc["payload"]["degree"] == 1);
}

TEST_CASE("optimize writes results and an optional CSV") {
    TempDir dir;
    std::string out = dir.file("opt.json");
    REQUIRE(run({"optimize", "--kind1", "min", "--kind2", "std", "--n", "1", "--m", "1", "--queries", "2",
                 "--powers", "+1,-1", "--fns", "perms", "--restarts", "6", "--iterations", "200", "--out", out,
                 "--csv"}) == 0);
    json doc = load_json_file(out);
    REQUIRE(doc["payload"]["best_error"].get<double>() <= 1e-6);
    REQUIRE(doc["payload"]["restarts"].size() == 6);
    std::string csv = read_file(out + ".csv");
    REQUIRE(csv.rfind("seed,final_error", 0) == 0);
    REQUIRE(run({"classify", "--kind", "std", "--n", "1", "--m", "1", "--csv"}) == 2);  // csv needs --out
}

TEST_CASE("circuit round trip through JSON") {
    TempDir dir;
    CircuitSpec c = minimal_simulates_standard(1);
    atomic_write_file(dir.file("circuit.json"), dump_json(to_json(c)));
    CircuitSpec back = circuit_from_json(load_json_file(dir.file("circuit.json")));
    REQUIRE(back.system_bits == c.system_bits);
    REQUIRE(back.query_count() == 2);
    auto min1 = make_minimal_instance(1);
    FunctionTable f(1, 1, {1, 0});
    REQUIRE(qoracle::test::max_diff(apply_circuit(back, min1, f), apply_circuit(c, min1, f)) <= 1e-12);
}
