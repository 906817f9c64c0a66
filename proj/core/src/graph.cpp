#include "claimgraph/graph.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "claimgraph/errors.hpp"

namespace claimgraph {

bool ClaimDependencyGraph::cite_only() const {
  if (edges.empty()) return false;
  return std::all_of(edges.begin(), edges.end(),
                     [](const TypedEdge& e) { return e.rel == Relation::cite; });
}

std::array<std::size_t, kNumRelations> ClaimDependencyGraph::relation_counts() const {
  std::array<std::size_t, kNumRelations> counts{};
  for (const auto& e : edges) ++counts[static_cast<std::size_t>(e.rel)];
  return counts;
}

BoolMatrix cite_transitive_closure(const std::vector<TypedEdge>& cite_edges, int n,
                                   bool* cycle_detected) {
  BoolMatrix reach(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (const auto& e : cite_edges) {
    out[static_cast<std::size_t>(e.src - 1)].push_back(e.dst - 1);
  }

  // Depth-first reachability from every claim; cycles terminate naturally
  // through the visited set. The tests check this against a Floyd-Warshall
  // oracle, so the implementation deliberately takes a different route.
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    const auto si = static_cast<std::size_t>(s);
    reach.set(si, si);
    stack = out[si];
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      const auto vi = static_cast<std::size_t>(v);
      if (v == s || reach.at(si, vi)) continue;
      reach.set(si, vi);
      for (int w : out[vi]) {
        if (w != s && !reach.at(si, static_cast<std::size_t>(w))) stack.push_back(w);
      }
    }
  }

  if (cycle_detected) {
    *cycle_detected = false;
    for (int i = 0; i < n && !*cycle_detected; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (reach.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) &&
            reach.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i))) {
          *cycle_detected = true;
          break;
        }
      }
    }
  }
  return reach;
}

ClaimDependencyGraph integrate_edges(const std::vector<TypedEdge>& cite,
                                     const std::vector<TypedEdge>& term,
                                     const std::vector<TypedEdge>& func, int n) {
  // Relation per ordered pair: cite wins unconditionally, co-occurring
  // implicit signals corroborate each other as r_both.
  std::map<std::pair<int, int>, Relation> by_pair;
  for (const auto& e : func) by_pair[{e.src, e.dst}] = Relation::func;
  for (const auto& e : term) {
    auto [it, inserted] = by_pair.try_emplace({e.src, e.dst}, Relation::term);
    if (!inserted) it->second = Relation::both;
  }
  for (const auto& e : cite) by_pair[{e.src, e.dst}] = Relation::cite;

  ClaimDependencyGraph cdg;
  cdg.n = n;
  cdg.edges.reserve(by_pair.size());
  for (const auto& [pair, rel] : by_pair) {
    cdg.edges.push_back({pair.first, pair.second, rel});
  }
  std::sort(cdg.edges.begin(), cdg.edges.end());
  return cdg;
}

AdjacencySet build_adjacency(const ClaimDependencyGraph& cdg) {
  AdjacencySet adj;
  adj.n = cdg.n;
  const auto n = static_cast<std::size_t>(cdg.n);
  for (auto& m : adj.by_relation) m = BoolMatrix(n);
  adj.united = BoolMatrix(n);

  // Self-loops in every relation type; handled separately by the bias.
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& m : adj.by_relation) m.set(i, i);
    adj.united.set(i, i);
  }
  // Row = dependent claim i, column = antecedent claim j for edge (j -> i).
  for (const auto& e : cdg.edges) {
    const auto row = static_cast<std::size_t>(e.dst - 1);
    const auto col = static_cast<std::size_t>(e.src - 1);
    adj.by_relation[static_cast<std::size_t>(e.rel)].set(row, col);
    adj.united.set(row, col);
  }
  return adj;
}

ValidationReport validate_cdg(const ClaimDependencyGraph& cdg) {
  ValidationReport report;
  report.zero_edge = cdg.edges.empty();
  report.relation_counts = cdg.relation_counts();

  std::map<std::pair<int, int>, std::size_t> pair_counts;
  for (const auto& e : cdg.edges) ++pair_counts[{e.src, e.dst}];
  for (const auto& [pair, count] : pair_counts) {
    if (count > 1) report.exclusivity_violations += count - 1;
  }

  std::vector<TypedEdge> cite;
  for (const auto& e : cdg.edges) {
    if (e.rel == Relation::cite) cite.push_back(e);
  }
  bool cycle = false;
  cite_transitive_closure(cite, cdg.n, &cycle);
  report.cite_cycle = cycle;

  if (report.exclusivity_violations > 0) {
    throw ExclusivityViolation("CDG carries " + std::to_string(report.exclusivity_violations) +
                               " duplicate ordered claim pair(s)");
  }
  return report;
}

}  // namespace claimgraph
