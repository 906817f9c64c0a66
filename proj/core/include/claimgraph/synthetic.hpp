#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "claimgraph/claim.hpp"
#include "claimgraph/io.hpp"

namespace claimgraph {

// Deterministic uniform double in [0, 1) from the top 53 bits of the
// generator output. std::uniform_real_distribution is implementation
// defined, so fixtures built through it would not be portable.
inline double canonical_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

struct SyntheticOptions {
  int min_claims = 1;
  int max_claims = 24;
  double multi_cite_prob = 0.15;   // dependent claim citing a list/range
  double bad_ref_prob = 0.03;      // citation to a nonexistent number
  double term_ref_prob = 0.5;      // definite reference to an earlier term
  double func_prob = 0.4;          // lexicon-verb coupling to an earlier term
  double independent_prob = 0.25;  // claim > 1 opening a new family
};

// Random but well-formed patent text exercising the whole extraction
// surface: citation templates with every preposition, ranges and lists,
// indefinite/definite term chains and lexicon-verb couplings.
Patent synthetic_patent(std::mt19937_64& rng, const std::string& patent_id,
                        const SyntheticOptions& options = SyntheticOptions{});

// Random loss fixture for `losses --seed`: doc triplets plus a few patents
// with claim embeddings and mixed-relation edges.
LossFixture synthetic_loss_fixture(std::uint64_t seed);

}  // namespace claimgraph
