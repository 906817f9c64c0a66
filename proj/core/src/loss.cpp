#include "claimgraph/loss.hpp"

#include <cmath>
#include <string>

#include "claimgraph/attention.hpp"
#include "claimgraph/errors.hpp"

namespace claimgraph {

double RelationWeights::effective(Relation r) const {
  return softplus(raw[static_cast<std::size_t>(r)]);
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ZeroVector("cosine of vectors with different dimensions");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw ZeroVector("cosine of a zero vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double doc_contrastive_loss(std::span<const SimPair> batch, double tau) {
  // -log(e^{s+/t} / (e^{s+/t} + e^{s-/t})) = softplus((s- - s+)/tau).
  double sum = 0.0;
  for (const auto& pair : batch) {
    sum += softplus((pair.neg - pair.pos) / tau);
  }
  return sum / static_cast<double>(batch.size());
}

namespace {

// -log softmax of target within row `anchor`, over columns k != anchor.
double neg_log_softmax(const Matrix& sims, std::size_t anchor, std::size_t target) {
  const std::size_t n = sims.rows();
  double row_max = -1.0 / 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == anchor) continue;
    row_max = std::max(row_max, sims(anchor, k));
  }
  double denom = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == anchor) continue;
    denom += std::exp(sims(anchor, k) - row_max);
  }
  return -(sims(anchor, target) - row_max - std::log(denom));
}

}  // namespace

Matrix claim_similarity_matrix(const Matrix& claim_embeddings, double tau_c) {
  const std::size_t n = claim_embeddings.rows();
  const std::size_t d = claim_embeddings.cols();
  Matrix sims(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double s =
          cosine_similarity(std::span<const double>(claim_embeddings.row(j), d),
                            std::span<const double>(claim_embeddings.row(k), d)) /
          tau_c;
      sims(j, k) = s;
      sims(k, j) = s;
    }
  }
  return sims;
}

ClaimLossResult claim_loss_from_similarities(const Matrix& scaled_similarities,
                                             const ClaimDependencyGraph& cdg,
                                             const RelationWeights& weights,
                                             LossAnchor anchor) {
  ClaimLossResult result;
  result.edge_count = cdg.edges.size();
  if (cdg.edges.empty()) return result;  // zero-edge patents contribute nothing

  const std::size_t n = scaled_similarities.rows();
  double total = 0.0;
  for (const auto& e : cdg.edges) {
    if (e.src < 1 || e.dst < 1 || static_cast<std::size_t>(e.src) > n ||
        static_cast<std::size_t>(e.dst) > n) {
      throw IndexMismatch("edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                          ") outside the " + std::to_string(n) + "-claim similarity matrix");
    }
    const auto src = static_cast<std::size_t>(e.src - 1);
    const auto dst = static_cast<std::size_t>(e.dst - 1);
    const std::size_t a = anchor == LossAnchor::source ? src : dst;
    const std::size_t t = anchor == LossAnchor::source ? dst : src;
    const double log_term = neg_log_softmax(scaled_similarities, a, t);
    result.log_term_sums[static_cast<std::size_t>(e.rel)] += log_term;
    total += weights.effective(e.rel) * log_term;
  }
  result.loss = total / static_cast<double>(cdg.edges.size());
  return result;
}

ClaimLossResult claim_contrastive_loss_detail(const Matrix& claim_embeddings,
                                              const ClaimDependencyGraph& cdg,
                                              const RelationWeights& weights, double tau_c,
                                              LossAnchor anchor) {
  if (cdg.edges.empty()) {
    ClaimLossResult result;
    result.edge_count = 0;
    return result;
  }
  return claim_loss_from_similarities(claim_similarity_matrix(claim_embeddings, tau_c), cdg,
                                      weights, anchor);
}

double claim_contrastive_loss(const Matrix& claim_embeddings, const ClaimDependencyGraph& cdg,
                              const RelationWeights& weights, double tau_c, LossAnchor anchor) {
  return claim_contrastive_loss_detail(claim_embeddings, cdg, weights, tau_c, anchor).loss;
}

double joint_loss(double doc_loss, double claim_loss, double lambda) {
  return doc_loss + lambda * claim_loss;
}

std::array<double, kNumRelations> weight_gradients(const Matrix& claim_embeddings,
                                                   const ClaimDependencyGraph& cdg,
                                                   const RelationWeights& weights, double tau_c,
                                                   LossAnchor anchor) {
  std::array<double, kNumRelations> grads{};
  if (cdg.edges.empty()) return grads;
  const ClaimLossResult detail =
      claim_contrastive_loss_detail(claim_embeddings, cdg, weights, tau_c, anchor);
  // d/d raw_r of (1/|E|) sum_e softplus(raw_{r_e}) * logterm_e.
  for (int r = 0; r < kNumRelations; ++r) {
    grads[static_cast<std::size_t>(r)] =
        detail.log_term_sums[static_cast<std::size_t>(r)] /
        static_cast<double>(detail.edge_count) *
        logistic(weights.raw[static_cast<std::size_t>(r)]);
  }
  return grads;
}

std::vector<double> finite_difference(
    const std::function<double(std::span<const double>)>& f, std::span<const double> theta,
    double eps) {
  std::vector<double> point(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double saved = point[k];
    point[k] = saved + eps;
    const double up = f(point);
    point[k] = saved - eps;
    const double down = f(point);
    point[k] = saved;
    grad[k] = (up - down) / (2.0 * eps);
  }
  return grad;
}

Matrix mean_pool_claims(const Matrix& token_embeddings, const TokenClaimMap& map) {
  const std::size_t d = token_embeddings.cols();
  const auto n = static_cast<std::size_t>(map.n_claims);
  Matrix pooled(n, d);
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t u = 0; u < map.length() && u < map.real_len; ++u) {
    const auto claim = map.phi[u];
    if (claim == TokenClaimMap::kSentinel) continue;
    const auto c = static_cast<std::size_t>(claim - 1);
    for (std::size_t k = 0; k < d; ++k) pooled(c, k) += token_embeddings(u, k);
    ++counts[c];
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (counts[c] == 0) {
      throw IndexMismatch("claim " + std::to_string(c + 1) + " has no tokens to pool");
    }
    for (std::size_t k = 0; k < d; ++k) pooled(c, k) /= static_cast<double>(counts[c]);
  }
  return pooled;
}

}  // namespace claimgraph
