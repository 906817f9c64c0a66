#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "claimgraph/matrix.hpp"
#include "claimgraph/types.hpp"

namespace claimgraph {

// Heterogeneous claim dependency graph over claims 1..n. At most one edge
// (with exactly one relation) exists per ordered pair; the cite subgraph is
// expected to be acyclic, but cycles in malformed documents are kept and
// flagged in diagnostics rather than dropped.
struct ClaimDependencyGraph {
  int n = 0;
  std::vector<TypedEdge> edges;  // sorted by (src, dst)
  Diagnostics diagnostics;

  bool zero_edge() const { return edges.empty(); }
  bool cite_only() const;
  std::array<std::size_t, kNumRelations> relation_counts() const;
};

// Directed reachability over cite edges, reflexive. Cycles are handled
// naturally; *cycle_detected reports whether any nontrivial cycle exists.
BoolMatrix cite_transitive_closure(const std::vector<TypedEdge>& cite_edges, int n,
                                   bool* cycle_detected = nullptr);

// Merges the three extractor outputs into the final typed edge set:
// cite edges are unconditional; pairs carrying both implicit signals become
// r_both; the result satisfies off-diagonal mutual exclusivity.
ClaimDependencyGraph integrate_edges(const std::vector<TypedEdge>& cite,
                                     const std::vector<TypedEdge>& term,
                                     const std::vector<TypedEdge>& func, int n);

// The four typed adjacency matrices plus their elementwise-max union.
// Row i / column j is set by edge (c_j -> c_i): rows index the dependent
// claim, columns the antecedent. All diagonals are 1.
struct AdjacencySet {
  int n = 0;
  std::array<BoolMatrix, kNumRelations> by_relation;
  BoolMatrix united;

  const BoolMatrix& operator[](Relation r) const {
    return by_relation[static_cast<std::size_t>(r)];
  }
};

AdjacencySet build_adjacency(const ClaimDependencyGraph& cdg);

struct ValidationReport {
  std::size_t exclusivity_violations = 0;  // must be zero
  bool cite_cycle = false;
  bool zero_edge = false;
  std::array<std::size_t, kNumRelations> relation_counts{};
};

// Structural check over a CDG. Exclusivity violations indicate an
// integration bug and throw ExclusivityViolation; everything else is
// reported as data.
ValidationReport validate_cdg(const ClaimDependencyGraph& cdg);

}  // namespace claimgraph
