// End-to-end checks of the claimgraph binary: deterministic build outputs,
// worker-count independence of the stats report and the losses fixture run
// against the committed high-precision expectations.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "claimgraph/io.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

#ifndef CLAIMGRAPH_CLI_PATH
#error "CLAIMGRAPH_CLI_PATH must be defined"
#endif
#ifndef CLAIMGRAPH_TEST_DATA_DIR
#error "CLAIMGRAPH_TEST_DATA_DIR must be defined"
#endif

namespace {

const std::string kCli = CLAIMGRAPH_CLI_PATH;
const fs::path kDataDir = CLAIMGRAPH_TEST_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run(const std::string& args) {
  const fs::path out_file = fs::temp_directory_path() / "claimgraph_cli_out.txt";
  const std::string command = kCli + " " + args + " > " + out_file.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.stdout_text = claimgraph::read_file(out_file.string());
  fs::remove(out_file);
  return result;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("build writes one graph per patent plus a manifest") {
  const fs::path out = fresh_dir("cg_build_a");
  const RunResult result =
      run("build --input " + (kDataDir / "mini_corpus.jsonl").string() + " --out " + out.string() +
          " --emit-dot");
  REQUIRE(result.exit_code == 0);

  std::size_t graphs = 0, dots = 0;
  for (const auto& entry : fs::directory_iterator(out)) {
    const auto name = entry.path().filename().string();
    if (name.ends_with(".graph.json")) ++graphs;
    if (name.ends_with(".dot")) ++dots;
  }
  CHECK(graphs == 20);
  CHECK(dots == 20);

  const auto manifest = nlohmann::json::parse(claimgraph::read_file((out / "manifest.json").string()));
  CHECK(manifest["patents"].size() == 20);
  CHECK(manifest["skipped_records"] == 0);
  CHECK(manifest["corpus"]["total_edges"] == 112);
  CHECK(manifest["corpus"]["boundary"]["zero_edge"] == 1);
  CHECK(manifest["corpus"]["boundary"]["cite_only"] == 3);

  // Per-patent counters sum consistently with the corpus report.
  std::size_t edge_total = 0, zero_edge = 0, cite_only = 0, dropped_refs = 0;
  for (const auto& entry : manifest["patents"]) {
    edge_total += entry["edges"]["total"].get<std::size_t>();
    if (entry["zero_edge"].get<bool>()) ++zero_edge;
    if (entry["cite_only"].get<bool>()) ++cite_only;
    dropped_refs += entry["dropped_refs"].get<std::size_t>();
  }
  CHECK(edge_total == manifest["corpus"]["total_edges"].get<std::size_t>());
  CHECK(zero_edge == manifest["corpus"]["boundary"]["zero_edge"].get<std::size_t>());
  CHECK(cite_only == manifest["corpus"]["boundary"]["cite_only"].get<std::size_t>());
  CHECK(dropped_refs == 2);
}

TEST_CASE("build output is byte-identical across runs") {
  const fs::path a = fresh_dir("cg_build_b1");
  const fs::path b = fresh_dir("cg_build_b2");
  const std::string input = (kDataDir / "mini_corpus.jsonl").string();
  REQUIRE(run("build --input " + input + " --out " + a.string()).exit_code == 0);
  REQUIRE(run("build --input " + input + " --out " + b.string()).exit_code == 0);
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    CHECK(claimgraph::read_file(entry.path().string()) ==
          claimgraph::read_file((b / name).string()));
  }
}

TEST_CASE("empty input fails with a malformed-record message") {
  const fs::path empty = fs::temp_directory_path() / "cg_empty.jsonl";
  std::ofstream(empty).close();
  const RunResult result =
      run("build --input " + empty.string() + " --out " + fresh_dir("cg_build_e").string());
  CHECK(result.exit_code != 0);
}

TEST_CASE("stats report is byte-stable across runs and worker counts") {
  const std::string input = (kDataDir / "mini_corpus.jsonl").string();
  const fs::path r1 = fs::temp_directory_path() / "cg_stats_1.json";
  const fs::path r4 = fs::temp_directory_path() / "cg_stats_4.json";

  const RunResult a = run("stats --input " + input + " --out " + r1.string() + " --workers 1");
  const RunResult b = run("stats --input " + input + " --out " + r4.string() + " --workers 4");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  CHECK(claimgraph::read_file(r1.string()) == claimgraph::read_file(r4.string()));

  // Relation percentages sum to 100 +- 0.1.
  const auto report = nlohmann::json::parse(claimgraph::read_file(r1.string()));
  double percent_sum = 0.0;
  for (const auto& rel : report["relations"]) percent_sum += rel["percent"].get<double>();
  CHECK(percent_sum > 99.9);
  CHECK(percent_sum < 100.1);
}

TEST_CASE("stats output matches the committed golden report byte for byte") {
  const std::string input = (kDataDir / "mini_corpus.jsonl").string();
  const fs::path json_out = fs::temp_directory_path() / "cg_stats_golden.json";
  const RunResult result = run("stats --input " + input + " --out " + json_out.string());
  REQUIRE(result.exit_code == 0);
  CHECK(result.stdout_text ==
        claimgraph::read_file((kDataDir / "golden" / "stats_report.txt").string()));
  CHECK(claimgraph::read_file(json_out.string()) ==
        claimgraph::read_file((kDataDir / "golden" / "stats_report.json").string()));
}

TEST_CASE("stats can read back exported graph files") {
  const fs::path out = fresh_dir("cg_build_g");
  const std::string input = (kDataDir / "mini_corpus.jsonl").string();
  REQUIRE(run("build --input " + input + " --out " + out.string()).exit_code == 0);
  const RunResult from_graphs = run("stats --graphs " + out.string());
  const RunResult from_input = run("stats --input " + input);
  REQUIRE(from_graphs.exit_code == 0);
  CHECK(from_graphs.stdout_text == from_input.stdout_text);
}

TEST_CASE("losses evaluates the committed fixture to the oracle values") {
  const RunResult result = run("losses --input " + (kDataDir / "loss_fixture.json").string());
  REQUIRE(result.exit_code == 0);

  const auto expected = nlohmann::json::parse(
      claimgraph::read_file((kDataDir / "loss_fixture_expected.json").string()));

  auto extract_value = [&](const std::string& key) {
    const auto pos = result.stdout_text.find(key);
    REQUIRE(pos != std::string::npos);
    const auto eq = result.stdout_text.find('=', pos);
    return std::stod(result.stdout_text.substr(eq + 1));
  };
  const double l_doc = extract_value("L_doc");
  const double l_claim = extract_value("L_claim");
  const double l_total = extract_value("L ");
  CHECK(std::fabs(l_doc - expected["l_doc"].get<double>()) /
            expected["l_doc"].get<double>() < 1e-10);
  CHECK(std::fabs(l_claim - expected["l_claim"].get<double>()) /
            expected["l_claim"].get<double>() < 1e-10);
  CHECK(std::fabs(l_total - expected["l_total"].get<double>()) /
            expected["l_total"].get<double>() < 1e-10);
}

TEST_CASE("losses on a symmetric fixture: L_doc = ln 2, L_claim = mean w ln(n-1)") {
  // s+ = s-, all claim embeddings identical: every cosine is 1, so each
  // edge contributes w_r ln(n-1) and the doc term is exactly ln 2.
  const fs::path fixture = fs::temp_directory_path() / "cg_symmetric_fixture.json";
  {
    std::ofstream out(fixture);
    out << R"({
      "tau": 0.05, "tau_c": 0.05, "lambda": 1.0,
      "raw_weights": [0.0, 0.0, 0.0, 0.0],
      "doc_pairs": [[0.4, 0.4], [0.9, 0.9]],
      "patents": [
        {"patent_id": "S1", "n": 4,
         "edges": [{"src": 1, "dst": 2, "rel": "cite"}],
         "claim_embeddings": [[0.5, 0.5], [0.5, 0.5], [0.5, 0.5], [0.5, 0.5]]},
        {"patent_id": "S2", "n": 3,
         "edges": [{"src": 1, "dst": 3, "rel": "term"}],
         "claim_embeddings": [[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]]}
      ]
    })";
  }
  const RunResult result = run("losses --input " + fixture.string());
  REQUIRE(result.exit_code == 0);
  auto extract_value = [&](const std::string& key) {
    const auto pos = result.stdout_text.find(key);
    REQUIRE(pos != std::string::npos);
    const auto eq = result.stdout_text.find('=', pos);
    return std::stod(result.stdout_text.substr(eq + 1));
  };
  const double ln2 = 0.6931471805599453;
  CHECK(std::fabs(extract_value("L_doc") - ln2) < 1e-12);
  const double expected_claim = ln2 * (std::log(3.0) + std::log(2.0)) / 2.0;
  CHECK(std::fabs(extract_value("L_claim") - expected_claim) < 1e-12);
  fs::remove(fixture);
}

TEST_CASE("losses with lambda 0 reports L equal to L_doc") {
  const RunResult result =
      run("losses --input " + (kDataDir / "loss_fixture.json").string() + " --lambda 0");
  REQUIRE(result.exit_code == 0);
  auto extract_value = [&](const std::string& key) {
    const auto pos = result.stdout_text.find(key);
    REQUIRE(pos != std::string::npos);
    const auto eq = result.stdout_text.find('=', pos);
    return std::stod(result.stdout_text.substr(eq + 1));
  };
  CHECK(extract_value("L ") == extract_value("L_doc"));
}

TEST_CASE("build with workers is byte-identical to the single-threaded run") {
  const fs::path a = fresh_dir("cg_build_w1");
  const fs::path b = fresh_dir("cg_build_w4");
  const std::string input = (kDataDir / "mini_corpus.jsonl").string();
  REQUIRE(run("build --input " + input + " --out " + a.string() + " --workers 1").exit_code == 0);
  REQUIRE(run("build --input " + input + " --out " + b.string() + " --workers 4").exit_code == 0);
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    if (name == "manifest.json") continue;  // differs in the config echo only
    CHECK(claimgraph::read_file(entry.path().string()) ==
          claimgraph::read_file((b / name).string()));
  }
  // Manifests match everywhere outside the echoed configuration.
  auto manifest_a = nlohmann::json::parse(claimgraph::read_file((a / "manifest.json").string()));
  auto manifest_b = nlohmann::json::parse(claimgraph::read_file((b / "manifest.json").string()));
  CHECK(manifest_a["config"]["workers"] == 1);
  CHECK(manifest_b["config"]["workers"] == 4);
  manifest_a.erase("config");
  manifest_b.erase("config");
  CHECK(manifest_a == manifest_b);
}

TEST_CASE("build emits mask and per-layer bias binaries on request") {
  const fs::path out = fresh_dir("cg_build_m");
  const std::string input = (kDataDir / "mini_corpus.jsonl").string();
  REQUIRE(run("build --input " + input + " --out " + out.string() +
              " --emit-masks --emit-biases --layers 2")
              .exit_code == 0);

  std::ifstream mask_in(out / "PAT-001.mask.bin", std::ios::binary);
  REQUIRE(mask_in.good());
  const claimgraph::BinaryMatrix mask = claimgraph::read_matrix_binary(mask_in);
  CHECK(mask.kind == "mask");
  CHECK(mask.ninf_sentinel == -1e9);
  CHECK(mask.length > 0);
  // Row 0 is the [CLS] exemption: never the sentinel.
  for (std::size_t v = 0; v < mask.length; ++v) CHECK(mask.values[v] == 0.0f);

  for (int layer = 0; layer < 2; ++layer) {
    std::ifstream bias_in(out / ("PAT-001.bias.l" + std::to_string(layer) + ".bin"),
                          std::ios::binary);
    REQUIRE(bias_in.good());
    const claimgraph::BinaryMatrix bias = claimgraph::read_matrix_binary(bias_in);
    CHECK(bias.kind == "bias");
    CHECK(bias.layer == layer);
    CHECK(bias.length == mask.length);
    // Zero-initialized scalars: intra-claim entries carry softplus(0).
    CHECK(bias.values[1 * bias.length + 1] == doctest::Approx(0.69314718f));
  }
  CHECK_FALSE(fs::exists(out / "PAT-001.bias.l2.bin"));
}

TEST_CASE("CLAIMGRAPH_LEXICON overrides the built-in verb lexicon") {
  // A lexicon without any default verb: every func/both edge disappears.
  const fs::path lex = fs::temp_directory_path() / "cg_custom_lexicon.txt";
  {
    std::ofstream out(lex);
    out << "swizzle\n";
  }
  const fs::path out = fresh_dir("cg_build_lex");
  const std::string input = (kDataDir / "mini_corpus.jsonl").string();
  const std::string command = "CLAIMGRAPH_LEXICON=" + lex.string() + " " + kCli +
                              " build --input " + input + " --out " + out.string() +
                              " > /dev/null 2>&1";
  REQUIRE(std::system(command.c_str()) == 0);
  const auto manifest =
      nlohmann::json::parse(claimgraph::read_file((out / "manifest.json").string()));
  CHECK(manifest["corpus"]["relations"]["func"]["count"] == 0);
  CHECK(manifest["corpus"]["relations"]["both"]["count"] == 0);
  CHECK(manifest["corpus"]["relations"]["cite"]["count"] == 82);
  fs::remove(lex);
}

TEST_CASE("records with duplicate claim numbers are skipped, not fatal") {
  const fs::path input = fs::temp_directory_path() / "cg_dup.jsonl";
  {
    std::ofstream out(input);
    out << R"({"patent_id":"DUP","claims":[{"num":1,"text":"A widget."},{"num":1,"text":"A gadget."}]})"
        << "\n";
    out << R"({"patent_id":"OK","claims":[{"num":1,"text":"A widget."}]})" << "\n";
  }
  const fs::path out = fresh_dir("cg_build_dup");
  const RunResult result = run("build --input " + input.string() + " --out " + out.string());
  CHECK(result.exit_code == 0);
  const auto manifest =
      nlohmann::json::parse(claimgraph::read_file((out / "manifest.json").string()));
  CHECK(manifest["skipped_records"] == 1);
  CHECK(manifest["patents"].size() == 1);
  fs::remove(input);
}

TEST_CASE("losses generates a seeded fixture when no input is given") {
  const RunResult a = run("losses --seed 7");
  const RunResult b = run("losses --seed 7");
  REQUIRE(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  const RunResult c = run("losses --seed 8");
  CHECK(a.stdout_text != c.stdout_text);
}
