#include "claimgraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <vector>

namespace claimgraph {

namespace {

// Undirected BFS distances from `start` over an adjacency list.
std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> queue;
  dist[static_cast<std::size_t>(start)] = 0;
  queue.push(start);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push(w);
      }
    }
  }
  return dist;
}

std::vector<std::vector<int>> undirected_adjacency(const ClaimDependencyGraph& cdg) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(cdg.n));
  for (const auto& e : cdg.edges) {
    adj[static_cast<std::size_t>(e.src - 1)].push_back(e.dst - 1);
    adj[static_cast<std::size_t>(e.dst - 1)].push_back(e.src - 1);
  }
  return adj;
}

MetricSummary summarize(std::vector<double> samples) {
  MetricSummary s;
  s.count = samples.size();
  if (samples.empty()) return s;
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean = sum / static_cast<double>(samples.size());
  double sq = 0.0;
  for (double v : samples) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / static_cast<double>(samples.size()));
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  s.median = (n % 2 == 1) ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  s.min = samples.front();
  s.max = samples.back();
  return s;
}

}  // namespace

std::pair<double, int> path_metrics(const ClaimDependencyGraph& cdg) {
  const auto adj = undirected_adjacency(cdg);
  const auto n = static_cast<std::size_t>(cdg.n);

  // Largest connected component; ties go to the component containing the
  // smallest claim rank, which the scan order produces naturally.
  std::vector<int> component(n, -1);
  int best_root = 0;
  std::size_t best_size = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (component[v] >= 0) continue;
    const auto dist = bfs_distances(adj, static_cast<int>(v));
    std::size_t size = 0;
    for (std::size_t w = 0; w < n; ++w) {
      if (dist[w] >= 0) {
        component[w] = static_cast<int>(v);
        ++size;
      }
    }
    if (size > best_size) {
      best_size = size;
      best_root = static_cast<int>(v);
    }
  }

  double total = 0.0;
  std::size_t pairs = 0;
  int diameter = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (component[v] != best_root) continue;
    const auto dist = bfs_distances(adj, static_cast<int>(v));
    for (std::size_t w = 0; w < n; ++w) {
      if (w == v || component[w] != best_root) continue;
      total += dist[w];
      ++pairs;
      diameter = std::max(diameter, dist[w]);
    }
  }
  return {pairs == 0 ? 0.0 : total / static_cast<double>(pairs), diameter};
}

PatentStats patent_stats(const ClaimDependencyGraph& cdg, std::string patent_id) {
  PatentStats stats;
  stats.patent_id = std::move(patent_id);
  stats.n_claims = cdg.n;
  stats.n_edges = cdg.edges.size();
  stats.relation_counts = cdg.relation_counts();
  stats.zero_edge = cdg.edges.empty();
  stats.cite_only = cdg.cite_only();
  stats.single_claim = cdg.n == 1;
  stats.diagnostics = cdg.diagnostics;
  if (cdg.n >= 2) {
    stats.density = static_cast<double>(cdg.edges.size()) /
                    (static_cast<double>(cdg.n) * static_cast<double>(cdg.n - 1));
  }
  if (!cdg.edges.empty()) {
    const auto [avg, diam] = path_metrics(cdg);
    stats.avg_path_length = avg;
    stats.diameter = diam;
  }
  return stats;
}

void StatsAccumulator::add(const PatentStats& stats) {
  ++patents_;
  claims_.push_back(static_cast<double>(stats.n_claims));
  edges_.push_back(static_cast<double>(stats.n_edges));
  density_.push_back(stats.density);
  if (stats.avg_path_length) path_.push_back(*stats.avg_path_length);
  if (stats.diameter) diameter_.push_back(static_cast<double>(*stats.diameter));
  for (int r = 0; r < kNumRelations; ++r) {
    const auto count = stats.relation_counts[static_cast<std::size_t>(r)];
    relation_counts_[static_cast<std::size_t>(r)] += count;
    if (count > 0) ++relation_presence_[static_cast<std::size_t>(r)];
  }
  if (stats.zero_edge) ++zero_edge_;
  if (stats.single_claim) ++single_claim_;
  if (stats.cite_only) ++cite_only_;
}

void StatsAccumulator::merge(const StatsAccumulator& other) {
  patents_ += other.patents_;
  claims_.insert(claims_.end(), other.claims_.begin(), other.claims_.end());
  edges_.insert(edges_.end(), other.edges_.begin(), other.edges_.end());
  density_.insert(density_.end(), other.density_.begin(), other.density_.end());
  path_.insert(path_.end(), other.path_.begin(), other.path_.end());
  diameter_.insert(diameter_.end(), other.diameter_.begin(), other.diameter_.end());
  for (int r = 0; r < kNumRelations; ++r) {
    relation_counts_[static_cast<std::size_t>(r)] += other.relation_counts_[static_cast<std::size_t>(r)];
    relation_presence_[static_cast<std::size_t>(r)] += other.relation_presence_[static_cast<std::size_t>(r)];
  }
  zero_edge_ += other.zero_edge_;
  single_claim_ += other.single_claim_;
  cite_only_ += other.cite_only_;
}

CorpusReport StatsAccumulator::report() const {
  CorpusReport report;
  report.patents = patents_;
  report.claims_per_patent = summarize(claims_);
  report.edges_per_patent = summarize(edges_);
  report.density = summarize(density_);
  report.avg_path_length = summarize(path_);
  report.diameter = summarize(diameter_);
  std::size_t total = 0;
  for (auto c : relation_counts_) total += c;
  report.total_edges = total;
  for (int r = 0; r < kNumRelations; ++r) {
    auto& rel = report.relations[static_cast<std::size_t>(r)];
    rel.count = relation_counts_[static_cast<std::size_t>(r)];
    rel.percent = total == 0 ? 0.0 : 100.0 * static_cast<double>(rel.count) / static_cast<double>(total);
    rel.mean_per_patent =
        patents_ == 0 ? 0.0 : static_cast<double>(rel.count) / static_cast<double>(patents_);
    rel.presence_rate = patents_ == 0 ? 0.0
                                      : 100.0 *
                                            static_cast<double>(
                                                relation_presence_[static_cast<std::size_t>(r)]) /
                                            static_cast<double>(patents_);
  }
  report.zero_edge_patents = zero_edge_;
  report.single_claim_patents = single_claim_;
  report.cite_only_patents = cite_only_;
  return report;
}

CorpusReport corpus_report(const std::vector<PatentStats>& stats) {
  StatsAccumulator acc;
  for (const auto& s : stats) acc.add(s);
  return acc.report();
}

std::string render_report_table(const CorpusReport& report) {
  std::string out;
  char line[160];
  auto append = [&](const char* fmt, auto... args) {
    std::snprintf(line, sizeof(line), fmt, args...);
    out += line;
  };

  append("%-18s %9s %9s %9s %9s %9s\n", "metric", "mean", "std", "median", "min", "max");
  auto metric_row = [&](const char* name, const MetricSummary& m) {
    if (m.count == 0) {
      append("%-18s %9s %9s %9s %9s %9s\n", name, "-", "-", "-", "-", "-");
    } else {
      append("%-18s %9.3f %9.3f %9.3f %9.3f %9.3f\n", name, m.mean, m.stddev, m.median, m.min,
             m.max);
    }
  };
  metric_row("claims/patent", report.claims_per_patent);
  metric_row("edges/patent", report.edges_per_patent);
  metric_row("density", report.density);
  metric_row("avg path length", report.avg_path_length);
  metric_row("diameter", report.diameter);

  append("\n%-10s %9s %7s %12s %10s\n", "relation", "count", "%", "mean/patent", "presence");
  for (int r = 0; r < kNumRelations; ++r) {
    const auto& rel = report.relations[static_cast<std::size_t>(r)];
    append("%-10s %9zu %7.1f %12.2f %9.1f%%\n", relation_name(static_cast<Relation>(r)),
           rel.count, rel.percent, rel.mean_per_patent, rel.presence_rate);
  }
  append("%-10s %9zu %7.1f %12.2f %10s\n", "total", report.total_edges,
         report.total_edges == 0 ? 0.0 : 100.0,
         report.patents == 0 ? 0.0
                             : static_cast<double>(report.total_edges) /
                                   static_cast<double>(report.patents),
         "-");

  append("\npatents %zu | zero-edge %zu | single-claim %zu | cite-only %zu\n", report.patents,
         report.zero_edge_patents, report.single_claim_patents, report.cite_only_patents);
  return out;
}

}  // namespace claimgraph
