#include "claimgraph/toy_encoder.hpp"

#include <cmath>
#include <vector>

namespace claimgraph {

namespace {

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

}  // namespace

double ToyEncoder::loss(const BiasParams& params) const {
  const MaskMatrix mask = build_connectivity_mask(adjacency, map);
  const BiasMatrix bias = build_relation_bias(adjacency, map, params, layer);
  const Matrix attn = masked_biased_attention(logits, mask, &bias);
  const Matrix mixed = matmul(attn, values);
  const Matrix pooled = mean_pool_claims(mixed, map);
  return claim_contrastive_loss(pooled, cdg, weights, tau_c, anchor);
}

std::array<double, kBiasKindsPerLayer> ToyEncoder::bias_gradients(
    const BiasParams& params) const {
  const std::size_t length = map.length();
  const std::size_t dim = values.cols();
  const auto n = static_cast<std::size_t>(map.n_claims);

  // Forward pass, keeping every intermediate needed by the chain rule.
  const MaskMatrix mask = build_connectivity_mask(adjacency, map);
  const BiasMatrix bias = build_relation_bias(adjacency, map, params, layer);
  const Matrix attn = masked_biased_attention(logits, mask, &bias);
  const Matrix mixed = matmul(attn, values);
  const Matrix pooled = mean_pool_claims(mixed, map);

  std::vector<double> norms(n);
  for (std::size_t c = 0; c < n; ++c) {
    double sq = 0.0;
    for (std::size_t k = 0; k < dim; ++k) sq += pooled(c, k) * pooled(c, k);
    norms[c] = std::sqrt(sq);
  }
  Matrix sims(n, n);  // S_jk = cos(h_j, h_k) / tau_c
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      double dot = 0.0;
      for (std::size_t d = 0; d < dim; ++d) dot += pooled(j, d) * pooled(k, d);
      sims(j, k) = dot / (norms[j] * norms[k]) / tau_c;
    }
  }

  // d loss / d S: each edge anchors a softmax row; within that row the
  // gradient is (p_ak - [k == target]) scaled by w_r / |E|.
  Matrix sim_grad(n, n);
  const auto edge_count = static_cast<double>(cdg.edges.size());
  for (const auto& e : cdg.edges) {
    const auto src = static_cast<std::size_t>(e.src - 1);
    const auto dst = static_cast<std::size_t>(e.dst - 1);
    const std::size_t a = anchor == LossAnchor::source ? src : dst;
    const std::size_t t = anchor == LossAnchor::source ? dst : src;
    const double coeff = weights.effective(e.rel) / edge_count;

    double row_max = -1.0 / 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != a) row_max = std::max(row_max, sims(a, k));
    }
    double denom = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != a) denom += std::exp(sims(a, k) - row_max);
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (k == a) continue;
      const double p = std::exp(sims(a, k) - row_max) / denom;
      sim_grad(a, k) += coeff * (p - (k == t ? 1.0 : 0.0));
    }
  }

  // d loss / d h via the cosine derivative:
  // d cos(h_j, h_k)/d h_j = h_k/(|h_j||h_k|) - cos * h_j/|h_j|^2.
  Matrix pooled_grad(n, dim);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      const double g = sim_grad(j, k);
      if (g == 0.0) continue;
      const double cos_jk = sims(j, k) * tau_c;
      const double inv_cross = 1.0 / (norms[j] * norms[k]);
      const double inv_j2 = 1.0 / (norms[j] * norms[j]);
      const double inv_k2 = 1.0 / (norms[k] * norms[k]);
      for (std::size_t d = 0; d < dim; ++d) {
        pooled_grad(j, d) += g / tau_c * (pooled(k, d) * inv_cross - cos_jk * pooled(j, d) * inv_j2);
        pooled_grad(k, d) += g / tau_c * (pooled(j, d) * inv_cross - cos_jk * pooled(k, d) * inv_k2);
      }
    }
  }

  // Mean pooling spreads each claim gradient uniformly over its tokens.
  std::vector<std::size_t> claim_tokens(n, 0);
  for (std::size_t u = 0; u < map.real_len; ++u) {
    if (!map.is_sentinel(u)) ++claim_tokens[static_cast<std::size_t>(map.phi[u]) - 1];
  }
  Matrix mixed_grad(length, dim);
  for (std::size_t u = 0; u < map.real_len; ++u) {
    if (map.is_sentinel(u)) continue;
    const auto c = static_cast<std::size_t>(map.phi[u]) - 1;
    const double inv = 1.0 / static_cast<double>(claim_tokens[c]);
    for (std::size_t d = 0; d < dim; ++d) mixed_grad(u, d) = pooled_grad(c, d) * inv;
  }

  // Through the value mixing: dP_uv = <d mixed_u, x_v>.
  Matrix attn_grad(length, length);
  for (std::size_t u = 0; u < length; ++u) {
    for (std::size_t v = 0; v < length; ++v) {
      if (mask.masked(u, v)) continue;
      double dot = 0.0;
      for (std::size_t d = 0; d < dim; ++d) dot += mixed_grad(u, d) * values(v, d);
      attn_grad(u, v) = dot;
    }
  }

  // Softmax backward per row, then accumulate into the scalar that fed each
  // bias entry, times the softplus derivative.
  std::array<double, kBiasKindsPerLayer> grads{};
  for (std::size_t u = 0; u < length; ++u) {
    double inner = 0.0;
    for (std::size_t v = 0; v < length; ++v) {
      if (!mask.masked(u, v)) inner += attn(u, v) * attn_grad(u, v);
    }
    for (std::size_t v = 0; v < length; ++v) {
      if (mask.masked(u, v)) continue;
      const double z_grad = attn(u, v) * (attn_grad(u, v) - inner);
      const BiasKind kind = bias_kind(adjacency, map, u, v);
      if (kind != BiasKind::none) grads[static_cast<int>(kind)] += z_grad;
    }
  }
  for (int k = 0; k < kBiasKindsPerLayer; ++k) {
    grads[k] *= logistic(params.raw(layer, static_cast<BiasKind>(k)));
  }
  return grads;
}

}  // namespace claimgraph
