#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "claimgraph/graph.hpp"
#include "claimgraph/matrix.hpp"
#include "claimgraph/tokenizer.hpp"

namespace claimgraph {

// Learnable per-relation weights w_r = softplus(raw_r). Zero initialization
// gives w_r = ln 2.
struct RelationWeights {
  std::array<double, kNumRelations> raw{};

  double effective(Relation r) const;
};

double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct SimPair {
  double pos = 0.0;  // s_i^+
  double neg = 0.0;  // s_i^-
};

// Document-level triplet loss: -(1/N) sum log(e^{s+/t} / (e^{s+/t}+e^{s-/t})),
// evaluated in the stable softplus((s- - s+)/tau) form.
double doc_contrastive_loss(std::span<const SimPair> batch, double tau);

// Which claim anchors the per-edge softmax of the claim loss. The source
// (antecedent) anchor follows the formula as written; the dependent anchor
// is exposed for sensitivity checks only.
enum class LossAnchor { source, dependent };

struct ClaimLossResult {
  double loss = 0.0;
  std::size_t edge_count = 0;
  // Sum over edges of each relation of the per-edge -log softmax term;
  // loss == sum_r w_r * log_term_sums[r] / edge_count.
  std::array<double, kNumRelations> log_term_sums{};
};

// Relation-weighted claim alignment loss over the CDG edges. Embeddings are
// one row per claim (rank order). Zero-edge graphs contribute 0 with
// edge_count 0 and are excluded from any batch normalization by the caller.
ClaimLossResult claim_contrastive_loss_detail(const Matrix& claim_embeddings,
                                              const ClaimDependencyGraph& cdg,
                                              const RelationWeights& weights, double tau_c,
                                              LossAnchor anchor = LossAnchor::source);

double claim_contrastive_loss(const Matrix& claim_embeddings, const ClaimDependencyGraph& cdg,
                              const RelationWeights& weights, double tau_c,
                              LossAnchor anchor = LossAnchor::source);

// Same loss on a caller-supplied matrix of already scaled similarities
// (S_jk = cos(h_j, h_k) / tau_c; the diagonal is ignored). This is the core
// the embedding variant delegates to, and the form on which per-row shift
// invariance of the softmax is directly assertable.
ClaimLossResult claim_loss_from_similarities(const Matrix& scaled_similarities,
                                             const ClaimDependencyGraph& cdg,
                                             const RelationWeights& weights,
                                             LossAnchor anchor = LossAnchor::source);

// Pairwise scaled cosine similarities of claim embedding rows.
Matrix claim_similarity_matrix(const Matrix& claim_embeddings, double tau_c);

double joint_loss(double doc_loss, double claim_loss, double lambda);

// Analytic d L_claim / d raw_r: (1/|E|) * sum_{edges of type r}(-log softmax)
// times the logistic of raw_r. Zero vector for zero-edge graphs.
std::array<double, kNumRelations> weight_gradients(const Matrix& claim_embeddings,
                                                   const ClaimDependencyGraph& cdg,
                                                   const RelationWeights& weights, double tau_c,
                                                   LossAnchor anchor = LossAnchor::source);

// Central finite differences (f(x+e) - f(x-e)) / 2e per coordinate.
std::vector<double> finite_difference(
    const std::function<double(std::span<const double>)>& f, std::span<const double> theta,
    double eps = 1e-5);

// Mean-pooled claim representations from token vectors via the phi map;
// sentinel and padding positions are excluded. Returns n x d.
Matrix mean_pool_claims(const Matrix& token_embeddings, const TokenClaimMap& map);

}  // namespace claimgraph
