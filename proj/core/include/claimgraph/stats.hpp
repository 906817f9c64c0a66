#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "claimgraph/graph.hpp"

namespace claimgraph {

// Per-patent structural metrics. Path metrics use the undirected view of the
// edge set within the largest connected component and are absent for
// edgeless graphs.
struct PatentStats {
  std::string patent_id;
  int n_claims = 0;
  std::size_t n_edges = 0;  // self-loops excluded by construction
  double density = 0.0;     // |E| / (n(n-1)), 0 for n == 1
  std::array<std::size_t, kNumRelations> relation_counts{};
  std::optional<double> avg_path_length;
  std::optional<int> diameter;
  bool zero_edge = false;
  bool cite_only = false;
  bool single_claim = false;
  Diagnostics diagnostics;
};

PatentStats patent_stats(const ClaimDependencyGraph& cdg, std::string patent_id = "");

// BFS distances on the undirected view; average over connected ordered pairs
// within the largest component, diameter = the longest shortest path there.
// Requires at least one edge.
std::pair<double, int> path_metrics(const ClaimDependencyGraph& cdg);

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // population
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

struct RelationSummary {
  std::size_t count = 0;
  double percent = 0.0;           // of all edges
  double mean_per_patent = 0.0;
  double presence_rate = 0.0;     // percent of patents with >= 1 such edge
};

struct CorpusReport {
  std::size_t patents = 0;
  MetricSummary claims_per_patent;
  MetricSummary edges_per_patent;
  MetricSummary density;
  MetricSummary avg_path_length;  // over patents where defined
  MetricSummary diameter;         // over patents where defined
  std::array<RelationSummary, kNumRelations> relations{};
  std::size_t total_edges = 0;
  std::size_t zero_edge_patents = 0;
  std::size_t single_claim_patents = 0;
  std::size_t cite_only_patents = 0;
};

// Single-pass aggregator. Samples are retained so medians are exact; merge
// concatenates in call order, so merging per-worker partials in input order
// reproduces the single-worker result bit for bit.
class StatsAccumulator {
 public:
  void add(const PatentStats& stats);
  void merge(const StatsAccumulator& other);
  CorpusReport report() const;

 private:
  std::vector<double> claims_;
  std::vector<double> edges_;
  std::vector<double> density_;
  std::vector<double> path_;
  std::vector<double> diameter_;
  std::array<std::size_t, kNumRelations> relation_counts_{};
  std::array<std::size_t, kNumRelations> relation_presence_{};
  std::size_t patents_ = 0;
  std::size_t zero_edge_ = 0;
  std::size_t single_claim_ = 0;
  std::size_t cite_only_ = 0;
};

CorpusReport corpus_report(const std::vector<PatentStats>& stats);

// Fixed-width plain-text table mirroring the per-metric / per-relation /
// boundary-count layout. Byte-stable for identical reports.
std::string render_report_table(const CorpusReport& report);

}  // namespace claimgraph
