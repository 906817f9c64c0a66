#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace claimgraph {

// Edge relation types. Order matters: it is the storage index used by
// adjacency sets, bias parameters and relation weights.
enum class Relation : std::uint8_t { cite = 0, term = 1, func = 2, both = 3 };

inline constexpr int kNumRelations = 4;

const char* relation_name(Relation r);
Relation relation_from_name(const std::string& name);  // throws MalformedRecord

// Directed typed edge over claim ranks. src is the antecedent (cited or
// defining) claim, dst the dependent (referencing) claim; src != dst.
struct TypedEdge {
  int src = 0;
  int dst = 0;
  Relation rel = Relation::cite;

  friend auto operator<=>(const TypedEdge&, const TypedEdge&) = default;
};

// Non-fatal counters accumulated while processing one patent.
struct Diagnostics {
  std::size_t dropped_refs = 0;    // citations to nonexistent claim numbers
  std::size_t dropped_tokens = 0;  // tokens lost to max_len truncation
  bool cite_cycle = false;         // malformed document, kept and flagged

  friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

}  // namespace claimgraph
