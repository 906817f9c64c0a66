#pragma once

#include <cstdint>
#include <vector>

#include "claimgraph/graph.hpp"
#include "claimgraph/matrix.hpp"
#include "claimgraph/tokenizer.hpp"

namespace claimgraph {

// ln(1 + e^x), stable for large |x|: max(x,0) + log1p(e^{-|x|}).
double softplus(double x);

// Logistic function, the derivative of softplus.
double logistic(double x);

// Which scalar parameter feeds a bias entry. The first four values mirror
// Relation; self covers intra-claim pairs.
enum class BiasKind : std::uint8_t {
  cite = 0,
  term = 1,
  func = 2,
  both = 3,
  self = 4,
  none = 5,  // [CLS]/sentinel involved, padding, or unconnected pair
};

inline constexpr int kBiasKindsPerLayer = 5;

// Raw (pre-softplus) bias scalars, 5 per layer. Zero initialization gives
// effective values of ln 2 everywhere.
class BiasParams {
 public:
  static BiasParams zero_init(int num_layers = 24);

  int num_layers() const { return num_layers_; }

  double raw(int layer, BiasKind kind) const;
  double& raw(int layer, BiasKind kind);
  double effective(int layer, BiasKind kind) const;  // softplus(raw)

  const std::vector<double>& raw_values() const { return raw_; }
  std::vector<double>& raw_values() { return raw_; }

 private:
  int num_layers_ = 0;
  std::vector<double> raw_;  // num_layers * 5, row-major by layer
};

// Token-level connectivity mask. Entries are conceptually {0, -inf}; the
// -inf sentinel is a flag, never a floating-point infinity, so downstream
// softmax arithmetic cannot produce NaN from inf - inf.
class MaskMatrix {
 public:
  MaskMatrix() = default;
  explicit MaskMatrix(std::size_t length) : length_(length), masked_(length * length, 0) {}

  std::size_t length() const { return length_; }
  bool masked(std::size_t u, std::size_t v) const { return masked_[u * length_ + v] != 0; }
  void set_masked(std::size_t u, std::size_t v, bool m = true) {
    masked_[u * length_ + v] = m ? 1 : 0;
  }

 private:
  std::size_t length_ = 0;
  std::vector<std::uint8_t> masked_;
};

// Per-layer additive bias matrix (dense doubles; 0 where no bias applies).
struct BiasMatrix {
  Matrix values;
  std::size_t length() const { return values.rows(); }
};

// The scalar-parameter source for a token pair under the Eq-style rules:
// padding masked everywhere; [CLS]/sentinel pairs none; intra-claim self;
// connected cross-claim pairs the unique relation. Throws AmbiguousRelation
// if more than one typed bit is set off-diagonal, IndexMismatch if phi
// references a claim outside adj.
BiasKind bias_kind(const AdjacencySet& adj, const TokenClaimMap& map, std::size_t u,
                   std::size_t v);

// Connectivity mask per the three case rules evaluated in order: [CLS]
// exemption first, then union-adjacency gating, then -inf. Padding positions
// (beyond real_len) are masked from all rows and columns.
MaskMatrix build_connectivity_mask(const AdjacencySet& adj, const TokenClaimMap& map);

// Relation-aware bias for one layer; exactly one of {self bias, relation
// bias, zero} applies per entry.
BiasMatrix build_relation_bias(const AdjacencySet& adj, const TokenClaimMap& map,
                               const BiasParams& params, int layer);

// Graph-free bias used by the bias-only switch: the self bias on intra-claim
// pairs, zero elsewhere. No connectivity information is required.
BiasMatrix build_self_bias(const TokenClaimMap& map, const BiasParams& params, int layer);

// Row-stochastic attention of masked, biased logits. Masked entries are
// excluded from the normalizing sum and come out exactly 0.
Matrix masked_biased_attention(const Matrix& logits, const MaskMatrix& mask,
                               const BiasMatrix* bias = nullptr);

// Q K^T / sqrt(d_k) helper for small dense inputs.
Matrix scaled_dot_product(const Matrix& q, const Matrix& k);

}  // namespace claimgraph
