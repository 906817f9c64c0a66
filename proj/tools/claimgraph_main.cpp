// claimgraph: build claim dependency graphs from JSONL patent records,
// report corpus statistics and evaluate the contrastive loss kernels on
// serialized fixtures.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "claimgraph/attention.hpp"
#include "claimgraph/errors.hpp"
#include "claimgraph/io.hpp"
#include "claimgraph/loss.hpp"
#include "claimgraph/pipeline.hpp"
#include "claimgraph/stats.hpp"
#include "claimgraph/synthetic.hpp"
#include "claimgraph/tokenizer.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace claimgraph;
using ordered_json = nlohmann::ordered_json;

namespace {

struct PipelineConfig {
  std::string input;
  std::string output_dir;
  std::string graphs_dir;
  std::size_t max_seq_len = 512;
  double rho = 0.8;
  int max_components = 8;
  std::string lexicon_path;
  std::string stop_terms_path;
  double tau = 0.05;
  double tau_c = 0.05;
  double lambda = 1.0;
  int num_layers = 24;
  int workers = 1;
  bool emit_dot = false;
  bool emit_masks = false;
  bool emit_biases = false;
  std::uint64_t seed = 42;
  double grad_tol = 1e-4;
};

ExtractionOptions extraction_options(const PipelineConfig& config) {
  ExtractionOptions options;
  options.rho = config.rho;
  options.max_components = static_cast<std::size_t>(config.max_components);
  std::string lexicon = config.lexicon_path;
  if (lexicon.empty()) {
    if (const char* env = std::getenv("CLAIMGRAPH_LEXICON")) lexicon = env;
  }
  if (!lexicon.empty()) options.lexicon = load_verb_lexicon(lexicon);
  if (!config.stop_terms_path.empty()) options.stop_terms = load_stop_terms(config.stop_terms_path);
  return options;
}

ordered_json config_json(const PipelineConfig& config) {
  ordered_json j;
  j["input"] = config.input;
  j["max_seq_len"] = config.max_seq_len;
  j["rho"] = config.rho;
  j["k"] = config.max_components;
  j["lexicon"] = config.lexicon_path;
  j["stop_terms"] = config.stop_terms_path;
  j["tau"] = config.tau;
  j["tau_c"] = config.tau_c;
  j["lambda"] = config.lambda;
  j["layers"] = config.num_layers;
  j["workers"] = config.workers;
  j["emit_dot"] = config.emit_dot;
  j["emit_masks"] = config.emit_masks;
  j["emit_biases"] = config.emit_biases;
  j["seed"] = config.seed;
  return j;
}

struct ProcessedPatent {
  bool ok = false;
  bool fatal = false;  // integration bug, not a data problem
  std::string error;
  std::string patent_id;
  ClaimDependencyGraph cdg;
  PatentStats stats;
  std::size_t sequence_length = 0;
  std::size_t dropped_tokens = 0;
};

ProcessedPatent process_line(const std::string& line, const ExtractionOptions& options,
                             std::size_t max_seq_len) {
  ProcessedPatent out;
  try {
    const Patent patent = parse_patent_record(line);
    out.patent_id = patent.patent_id();
    out.cdg = build_cdg(patent, options);
    validate_cdg(out.cdg);
    const TokenizedPatent tokenized = tokenize_and_map(patent, max_seq_len);
    out.cdg.diagnostics.dropped_tokens = tokenized.dropped_tokens;
    out.sequence_length = tokenized.map.length();
    out.dropped_tokens = tokenized.dropped_tokens;
    out.stats = patent_stats(out.cdg, patent.patent_id());
    out.ok = true;
  } catch (const ExclusivityViolation& e) {
    out.fatal = true;
    out.error = e.what();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

// Worker pool over the record lines; results land at their input index so
// every downstream artifact is written in input order regardless of the
// worker count.
std::vector<ProcessedPatent> process_lines(const std::vector<std::string>& lines,
                                           const ExtractionOptions& options,
                                           const PipelineConfig& config) {
  std::vector<ProcessedPatent> results(lines.size());
  const int workers = std::max(1, config.workers);
  if (workers == 1 || lines.size() <= 1) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      results[i] = process_line(lines[i], options, config.max_seq_len);
    }
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= lines.size()) break;
        results[i] = process_line(lines[i], options, config.max_seq_len);
      }
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedRecord("cannot open input file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim_copy(line).empty()) lines.push_back(line);
  }
  return lines;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MalformedRecord("cannot write file: " + path.string());
  out << content;
}

int cmd_build(const PipelineConfig& config) {
  const std::vector<std::string> lines = read_lines(config.input);
  if (lines.empty()) {
    throw MalformedRecord("input '" + config.input + "' contains no records");
  }
  fs::create_directories(config.output_dir);

  const ExtractionOptions options = extraction_options(config);
  const std::vector<ProcessedPatent> results = process_lines(lines, options, config);

  const BiasParams params = BiasParams::zero_init(config.num_layers);
  StatsAccumulator accumulator;
  ordered_json manifest;
  manifest["config"] = config_json(config);
  manifest["patents"] = ordered_json::array();
  std::size_t skipped = 0;
  std::size_t succeeded = 0;

  for (std::size_t index = 0; index < results.size(); ++index) {
    const ProcessedPatent& result = results[index];
    if (result.fatal) {
      throw ExclusivityViolation(result.error);
    }
    if (!result.ok) {
      ++skipped;
      std::cerr << "skipping record: " << result.error << "\n";
      continue;
    }
    ++succeeded;
    accumulator.add(result.stats);

    const fs::path base = fs::path(config.output_dir) / result.patent_id;
    write_text_file(base.string() + ".graph.json",
                    graph_to_json(result.cdg, result.patent_id) + "\n");
    if (config.emit_dot) {
      write_text_file(base.string() + ".dot", graph_to_dot(result.cdg, result.patent_id));
    }
    if (config.emit_masks || config.emit_biases) {
      // Masks and biases need the token map again; recomputing here keeps
      // the worker results small.
      const Patent patent = parse_patent_record(lines[index]);
      const TokenizedPatent tokenized = tokenize_and_map(patent, config.max_seq_len);
      const AdjacencySet adjacency = build_adjacency(result.cdg);
      if (config.emit_masks) {
        const MaskMatrix mask = build_connectivity_mask(adjacency, tokenized.map);
        std::ofstream out(base.string() + ".mask.bin", std::ios::binary);
        write_mask_binary(out, mask);
      }
      if (config.emit_biases) {
        for (int layer = 0; layer < config.num_layers; ++layer) {
          const BiasMatrix bias = build_relation_bias(adjacency, tokenized.map, params, layer);
          std::ofstream out(base.string() + ".bias.l" + std::to_string(layer) + ".bin",
                            std::ios::binary);
          write_bias_binary(out, bias, layer);
        }
      }
    }

    ordered_json entry;
    entry["patent_id"] = result.patent_id;
    entry["n_claims"] = result.cdg.n;
    ordered_json edges;
    const auto counts = result.cdg.relation_counts();
    for (int r = 0; r < kNumRelations; ++r) {
      edges[relation_name(static_cast<Relation>(r))] = counts[static_cast<std::size_t>(r)];
    }
    edges["total"] = result.cdg.edges.size();
    entry["edges"] = std::move(edges);
    entry["sequence_length"] = result.sequence_length;
    entry["dropped_refs"] = result.cdg.diagnostics.dropped_refs;
    entry["dropped_tokens"] = result.dropped_tokens;
    entry["cite_cycle"] = result.cdg.diagnostics.cite_cycle;
    entry["zero_edge"] = result.cdg.zero_edge();
    entry["cite_only"] = result.cdg.cite_only();
    manifest["patents"].push_back(std::move(entry));
  }

  if (succeeded == 0) {
    throw MalformedRecord("no record in '" + config.input + "' could be processed");
  }

  manifest["skipped_records"] = skipped;
  manifest["corpus"] = nlohmann::ordered_json::parse(report_to_json(accumulator.report()));
  write_text_file(fs::path(config.output_dir) / "manifest.json", manifest.dump(2) + "\n");

  std::cout << "built " << succeeded << " graph(s) into " << config.output_dir << " ("
            << skipped << " skipped)\n";
  return 0;
}

int cmd_stats(const PipelineConfig& config) {
  StatsAccumulator accumulator;
  std::size_t skipped = 0;

  if (!config.input.empty()) {
    const std::vector<std::string> lines = read_lines(config.input);
    if (lines.empty()) throw MalformedRecord("input '" + config.input + "' contains no records");
    const ExtractionOptions options = extraction_options(config);
    for (const auto& result : process_lines(lines, options, config)) {
      if (result.fatal) throw ExclusivityViolation(result.error);
      if (!result.ok) {
        ++skipped;
        continue;
      }
      accumulator.add(result.stats);
    }
  } else if (!config.graphs_dir.empty()) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(config.graphs_dir)) {
      if (entry.path().string().ends_with(".graph.json")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw MalformedRecord("no .graph.json files under " + config.graphs_dir);
    }
    for (const auto& file : files) {
      NamedGraph named = graph_from_json(read_file(file.string()));
      accumulator.add(patent_stats(named.cdg, named.patent_id));
    }
  } else {
    throw MalformedRecord("stats needs --input or --graphs");
  }

  const CorpusReport report = accumulator.report();
  std::cout << render_report_table(report);
  if (skipped > 0) std::cout << "skipped records: " << skipped << "\n";
  if (!config.output_dir.empty()) {
    write_text_file(config.output_dir, report_to_json(report) + "\n");
  }
  return 0;
}

int cmd_losses(const PipelineConfig& config) {
  LossFixture fixture;
  if (!config.input.empty()) {
    fixture = parse_loss_fixture(read_file(config.input));
  } else {
    fixture = synthetic_loss_fixture(config.seed);
    fixture.tau = config.tau;
    fixture.tau_c = config.tau_c;
  }
  fixture.lambda = config.lambda;

  const double doc_loss = fixture.doc_pairs.empty()
                              ? 0.0
                              : doc_contrastive_loss(fixture.doc_pairs, fixture.tau);

  // Mean claim loss over patents that carry edges; zero-edge patents are
  // excluded from the normalization.
  double claim_sum = 0.0;
  std::size_t contributing = 0;
  for (std::size_t p = 0; p < fixture.patents.size(); ++p) {
    const auto detail = claim_contrastive_loss_detail(
        fixture.claim_embeddings[p], fixture.patents[p].cdg, fixture.weights, fixture.tau_c);
    if (detail.edge_count == 0) {
      std::cerr << "warning: patent '" << fixture.patents[p].patent_id
                << "' has no edges, contributing no claim loss\n";
      continue;
    }
    claim_sum += detail.loss;
    ++contributing;
  }
  const double claim_loss = contributing == 0 ? 0.0 : claim_sum / static_cast<double>(contributing);
  const double total = joint_loss(doc_loss, claim_loss, fixture.lambda);

  std::printf("L_doc   = %.17g\n", doc_loss);
  std::printf("L_claim = %.17g\n", claim_loss);
  std::printf("L       = %.17g\n", total);

  // Analytic vs central-difference gradients of the mean claim loss with
  // respect to the four raw relation weights.
  auto mean_claim_loss = [&](std::span<const double> raw) {
    RelationWeights weights;
    for (int r = 0; r < kNumRelations; ++r) weights.raw[static_cast<std::size_t>(r)] = raw[static_cast<std::size_t>(r)];
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t p = 0; p < fixture.patents.size(); ++p) {
      const auto detail = claim_contrastive_loss_detail(
          fixture.claim_embeddings[p], fixture.patents[p].cdg, weights, fixture.tau_c);
      if (detail.edge_count == 0) continue;
      sum += detail.loss;
      ++count;
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
  };

  std::array<double, kNumRelations> analytic{};
  std::size_t counted = 0;
  for (std::size_t p = 0; p < fixture.patents.size(); ++p) {
    if (fixture.patents[p].cdg.edges.empty()) continue;
    const auto grads = weight_gradients(fixture.claim_embeddings[p], fixture.patents[p].cdg,
                                        fixture.weights, fixture.tau_c);
    for (int r = 0; r < kNumRelations; ++r) analytic[static_cast<std::size_t>(r)] += grads[static_cast<std::size_t>(r)];
    ++counted;
  }
  if (counted > 0) {
    for (auto& g : analytic) g /= static_cast<double>(counted);
  }
  const std::vector<double> fd =
      finite_difference(mean_claim_loss, fixture.weights.raw, 1e-5);

  double max_rel_err = 0.0;
  for (int r = 0; r < kNumRelations; ++r) {
    const double a = analytic[static_cast<std::size_t>(r)];
    const double f = fd[static_cast<std::size_t>(r)];
    // Differences under the central-difference noise floor report 0.
    const double scale = std::max(std::fabs(a), std::fabs(f));
    const double rel = std::fabs(a - f) <= 1e-8 ? 0.0 : std::fabs(a - f) / scale;
    max_rel_err = std::max(max_rel_err, rel);
    std::printf("grad w_%s: analytic=%.12g fd=%.12g rel_err=%.3g\n",
                relation_name(static_cast<Relation>(r)), a, f, rel);
  }
  const bool ok = max_rel_err <= config.grad_tol;
  std::printf("max_rel_err = %.3g (tolerance %g) %s\n", max_rel_err, config.grad_tol,
              ok ? "OK" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"claim dependency graphs, attention masks and loss kernels"};
  app.require_subcommand(1);

  PipelineConfig config;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--max-len", config.max_seq_len, "maximum token sequence length")
        ->check(CLI::Range(static_cast<std::size_t>(2), static_cast<std::size_t>(1) << 20));
    cmd->add_option("--rho", config.rho, "ubiquity exclusion threshold, in (0, 1]")
        ->check(CLI::Range(1e-9, 1.0));
    cmd->add_option("--k", config.max_components, "per-claim component cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lexicon", config.lexicon_path,
                    "verb lexicon file (or CLAIMGRAPH_LEXICON)");
    cmd->add_option("--stop-terms", config.stop_terms_path, "stop-term list file");
    cmd->add_option("--tau", config.tau, "document-level temperature")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tau-c", config.tau_c, "claim-level temperature")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", config.lambda, "claim loss weight")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--layers", config.num_layers, "number of encoder layers")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--workers", config.workers, "worker thread count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", config.seed, "seed for fixture generation");
  };

  CLI::App* build = app.add_subcommand("build", "build CDGs and export artifacts");
  build->add_option("--input", config.input, "JSONL patent records")->required();
  build->add_option("--out", config.output_dir, "output directory")->required();
  build->add_flag("--emit-dot", config.emit_dot, "also write DOT files");
  build->add_flag("--emit-masks", config.emit_masks, "also write connectivity mask binaries");
  build->add_flag("--emit-biases", config.emit_biases, "also write per-layer bias binaries");
  add_common(build);

  CLI::App* stats = app.add_subcommand("stats", "corpus statistics report");
  stats->add_option("--input", config.input, "JSONL patent records");
  stats->add_option("--graphs", config.graphs_dir, "directory of .graph.json files");
  stats->add_option("--out", config.output_dir, "write the JSON report to this file");
  add_common(stats);

  CLI::App* losses = app.add_subcommand("losses", "evaluate loss kernels on a fixture");
  losses->add_option("--input", config.input, "loss fixture JSON");
  losses->add_option("--grad-tol", config.grad_tol, "gradient check tolerance");
  add_common(losses);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(config);
    if (stats->parsed()) return cmd_stats(config);
    if (losses->parsed()) return cmd_losses(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
