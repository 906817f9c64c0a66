#include "claimgraph/attention.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "claimgraph/errors.hpp"

namespace claimgraph {

double softplus(double x) {
  // ln(1 + e^x) = max(x, 0) + ln(1 + e^{-|x|}); never overflows.
  return std::max(x, 0.0) + std::log1p(std::exp(-std::fabs(x)));
}

double logistic(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

BiasParams BiasParams::zero_init(int num_layers) {
  BiasParams p;
  p.num_layers_ = num_layers;
  p.raw_.assign(static_cast<std::size_t>(num_layers) * kBiasKindsPerLayer, 0.0);
  return p;
}

double BiasParams::raw(int layer, BiasKind kind) const {
  return raw_[static_cast<std::size_t>(layer) * kBiasKindsPerLayer +
              static_cast<std::size_t>(kind)];
}

double& BiasParams::raw(int layer, BiasKind kind) {
  return raw_[static_cast<std::size_t>(layer) * kBiasKindsPerLayer +
              static_cast<std::size_t>(kind)];
}

double BiasParams::effective(int layer, BiasKind kind) const {
  return softplus(raw(layer, kind));
}

namespace {

void check_map_against(const AdjacencySet& adj, const TokenClaimMap& map) {
  for (std::size_t u = 0; u < map.length(); ++u) {
    const auto claim = map.phi[u];
    if (claim != TokenClaimMap::kSentinel && (claim < 1 || claim > adj.n)) {
      throw IndexMismatch("phi(" + std::to_string(u) + ") = " + std::to_string(claim) +
                          " outside adjacency of n = " + std::to_string(adj.n));
    }
  }
}

}  // namespace

BiasKind bias_kind(const AdjacencySet& adj, const TokenClaimMap& map, std::size_t u,
                   std::size_t v) {
  if (map.is_padding(u) || map.is_padding(v)) return BiasKind::none;
  const auto cu = map.phi[u];
  const auto cv = map.phi[v];
  if (cu == TokenClaimMap::kSentinel || cv == TokenClaimMap::kSentinel) return BiasKind::none;
  if (cu == cv) return BiasKind::self;
  const auto row = static_cast<std::size_t>(cu - 1);
  const auto col = static_cast<std::size_t>(cv - 1);
  if (!adj.united.at(row, col)) return BiasKind::none;
  int found = -1;
  for (int r = 0; r < kNumRelations; ++r) {
    if (adj.by_relation[static_cast<std::size_t>(r)].at(row, col)) {
      if (found >= 0) {
        throw AmbiguousRelation("claim pair (" + std::to_string(cu) + "," + std::to_string(cv) +
                                ") carries more than one relation bit");
      }
      found = r;
    }
  }
  return static_cast<BiasKind>(found);
}

MaskMatrix build_connectivity_mask(const AdjacencySet& adj, const TokenClaimMap& map) {
  check_map_against(adj, map);
  const std::size_t length = map.length();
  MaskMatrix mask(length);
  for (std::size_t u = 0; u < length; ++u) {
    const bool u_pad = map.is_padding(u);
    const auto cu = map.phi[u];
    for (std::size_t v = 0; v < length; ++v) {
      // Padding is masked everywhere, then the case rules in order: the
      // [CLS] exemption, sentinel special tokens, union-adjacency gating.
      if (u_pad || map.is_padding(v)) {
        mask.set_masked(u, v);
        continue;
      }
      if (u == 0 || v == 0) continue;
      const auto cv = map.phi[v];
      if (cu == TokenClaimMap::kSentinel || cv == TokenClaimMap::kSentinel) continue;
      if (adj.united.at(static_cast<std::size_t>(cu - 1), static_cast<std::size_t>(cv - 1))) {
        continue;
      }
      mask.set_masked(u, v);
    }
  }
  return mask;
}

BiasMatrix build_relation_bias(const AdjacencySet& adj, const TokenClaimMap& map,
                               const BiasParams& params, int layer) {
  check_map_against(adj, map);
  const std::size_t length = map.length();

  // All entries draw from 5 scalars; evaluate the softplus once per kind.
  double effective[kBiasKindsPerLayer];
  for (int k = 0; k < kBiasKindsPerLayer; ++k) {
    effective[k] = params.effective(layer, static_cast<BiasKind>(k));
  }

  BiasMatrix bias;
  bias.values = Matrix(length, length);
  for (std::size_t u = 0; u < length; ++u) {
    for (std::size_t v = 0; v < length; ++v) {
      const BiasKind kind = bias_kind(adj, map, u, v);
      if (kind != BiasKind::none) {
        bias.values(u, v) = effective[static_cast<int>(kind)];
      }
    }
  }
  return bias;
}

BiasMatrix build_self_bias(const TokenClaimMap& map, const BiasParams& params, int layer) {
  const std::size_t length = map.length();
  const double self = params.effective(layer, BiasKind::self);
  BiasMatrix bias;
  bias.values = Matrix(length, length);
  for (std::size_t u = 0; u < length; ++u) {
    if (map.is_padding(u) || map.is_sentinel(u)) continue;
    for (std::size_t v = 0; v < length; ++v) {
      if (map.is_padding(v)) continue;
      if (map.phi[v] == map.phi[u]) bias.values(u, v) = self;
    }
  }
  return bias;
}

Matrix masked_biased_attention(const Matrix& logits, const MaskMatrix& mask,
                               const BiasMatrix* bias) {
  const std::size_t length = logits.rows();
  Matrix out(length, length);
  for (std::size_t u = 0; u < length; ++u) {
    // Max over the unmasked support, then the usual shifted softmax. Masked
    // entries never enter the arithmetic, so exp(-inf) semantics hold
    // exactly and no NaN can arise.
    double row_max = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t v = 0; v < length; ++v) {
      if (mask.masked(u, v)) continue;
      const double z = logits(u, v) + (bias ? bias->values(u, v) : 0.0);
      row_max = std::max(row_max, z);
      any = true;
    }
    if (!any) {
      throw DegenerateRow("attention row " + std::to_string(u) + " is fully masked");
    }
    double denom = 0.0;
    for (std::size_t v = 0; v < length; ++v) {
      if (mask.masked(u, v)) continue;
      const double z = logits(u, v) + (bias ? bias->values(u, v) : 0.0);
      const double e = std::exp(z - row_max);
      out(u, v) = e;
      denom += e;
    }
    for (std::size_t v = 0; v < length; ++v) {
      if (!mask.masked(u, v)) out(u, v) /= denom;
    }
  }
  return out;
}

Matrix scaled_dot_product(const Matrix& q, const Matrix& k) {
  const std::size_t length = q.rows();
  const std::size_t dim = q.cols();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Matrix logits(length, length);
  for (std::size_t u = 0; u < length; ++u) {
    for (std::size_t v = 0; v < length; ++v) {
      double dot = 0.0;
      for (std::size_t d = 0; d < dim; ++d) dot += q(u, d) * k(v, d);
      logits(u, v) = dot * scale;
    }
  }
  return logits;
}

}  // namespace claimgraph
