#pragma once

#include <cstddef>

#include "claimgraph/extraction.hpp"
#include "claimgraph/graph.hpp"

namespace claimgraph {

struct ExtractionOptions {
  double rho = 0.8;                  // ubiquity exclusion threshold
  std::size_t max_components = 8;    // K, per-claim component cap
  VerbLexicon lexicon = VerbLexicon::default_lexicon();
  StopTerms stop_terms = default_stop_terms();
};

// Full per-patent extraction pipeline: citations, term flow, functional
// coupling, closure filtering and heterogeneous integration. Deterministic:
// identical input yields a byte-identical edge list.
ClaimDependencyGraph build_cdg(const Patent& patent,
                               const ExtractionOptions& options = ExtractionOptions{});

}  // namespace claimgraph
