#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "claimgraph/attention.hpp"
#include "claimgraph/claim.hpp"
#include "claimgraph/graph.hpp"
#include "claimgraph/loss.hpp"
#include "claimgraph/stats.hpp"

namespace claimgraph {

// ---------------------------------------------------------------------------
// JSONL patent records
// ---------------------------------------------------------------------------
// {"patent_id": str, "claims": [{"num": int, "text": str}, ...]}
// {"patent_id": str, "claims_block": str}

Patent parse_patent_record(std::string_view json_line);

// ---------------------------------------------------------------------------
// Graph JSON / DOT
// ---------------------------------------------------------------------------
// {"patent_id": str, "n": int, "edges": [{"src": int, "dst": int,
//  "rel": "cite|term|func|both"}, ...]}  with src the antecedent rank.

std::string graph_to_json(const ClaimDependencyGraph& cdg, const std::string& patent_id);

struct NamedGraph {
  std::string patent_id;
  ClaimDependencyGraph cdg;
};

NamedGraph graph_from_json(std::string_view json);

std::string graph_to_dot(const ClaimDependencyGraph& cdg, const std::string& patent_id);

// ---------------------------------------------------------------------------
// Mask / bias binary export
// ---------------------------------------------------------------------------
// One-line JSON header {"L": int, "kind": "mask|bias", "layer": int,
// "ninf_sentinel": float} + '\n' + L*L little-endian float32, row-major.
// Masked entries are written as the declared sentinel (default -1e9).

inline constexpr double kDefaultNinfSentinel = -1e9;

void write_mask_binary(std::ostream& out, const MaskMatrix& mask,
                       double ninf_sentinel = kDefaultNinfSentinel);
void write_bias_binary(std::ostream& out, const BiasMatrix& bias, int layer);

struct BinaryMatrix {
  std::size_t length = 0;
  std::string kind;
  int layer = 0;
  double ninf_sentinel = 0.0;
  std::vector<float> values;  // row-major, length * length
};

BinaryMatrix read_matrix_binary(std::istream& in);

// ---------------------------------------------------------------------------
// Loss fixtures
// ---------------------------------------------------------------------------
// {"tau": f, "tau_c": f, "lambda": f, "raw_weights": [4 floats],
//  "doc_triplets": [{"anchor": [...], "positive": [...], "negative": [...]}],
//  "doc_pairs": [[s_pos, s_neg], ...],            (alternative to triplets)
//  "patents": [{"patent_id": str, "n": int, "edges": [...],
//               "claim_embeddings": [[...], ...]}]}

struct LossFixture {
  double tau = 0.05;
  double tau_c = 0.05;
  double lambda = 1.0;
  RelationWeights weights;
  std::vector<SimPair> doc_pairs;
  std::vector<NamedGraph> patents;
  std::vector<Matrix> claim_embeddings;  // parallel to patents
};

LossFixture parse_loss_fixture(std::string_view json);
std::string loss_fixture_to_json(const LossFixture& fixture);

// Corpus report as pretty-printed JSON (stable key order and formatting).
std::string report_to_json(const CorpusReport& report);

// Utility: whole-file slurp (throws MalformedRecord on I/O failure).
std::string read_file(const std::string& path);

}  // namespace claimgraph
