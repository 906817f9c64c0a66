#pragma once

#include <array>

#include "claimgraph/attention.hpp"
#include "claimgraph/loss.hpp"

namespace claimgraph {

// One-layer desk-scale encoder used to verify bias-scalar gradients end to
// end: bias scalars -> bias matrix -> masked attention -> value mixing ->
// mean pooling -> claim alignment loss. Small and dense by construction.
struct ToyEncoder {
  Matrix values;  // L x d token value vectors
  Matrix logits;  // L x L fixed pre-softmax logits
  TokenClaimMap map;
  AdjacencySet adjacency;
  ClaimDependencyGraph cdg;
  RelationWeights weights;
  double tau_c = 0.05;
  LossAnchor anchor = LossAnchor::source;
  int layer = 0;

  // Forward pass; the loss as a function of the 5 raw bias scalars of
  // `layer` inside params.
  double loss(const BiasParams& params) const;

  // Analytic gradient of loss() with respect to the 5 raw scalars of
  // `layer`, ordered [cite, term, func, both, self]. Hand backprop through
  // the chain above; verified against central differences in the tests.
  std::array<double, kBiasKindsPerLayer> bias_gradients(const BiasParams& params) const;
};

}  // namespace claimgraph
