#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "claimgraph/claim.hpp"

namespace claimgraph {

// Pluggable tokenizer. Mask and bias construction depend only on the
// token-to-claim map, not on subword identity, so any backbone tokenizer can
// be dropped in behind this interface.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::vector<std::string> tokenize(std::string_view text) const = 0;
};

// Default deterministic tokenizer: splits on whitespace, then peels leading
// and trailing punctuation off each chunk as separate tokens.
class WhitespaceTokenizer final : public Tokenizer {
 public:
  std::vector<std::string> tokenize(std::string_view text) const override;
};

const Tokenizer& default_tokenizer();

inline constexpr const char* kClsToken = "[CLS]";

struct TokenSequence {
  std::vector<std::string> tokens;  // position 0 is the classifier token
  std::size_t length() const { return tokens.size(); }
};

// phi: token position -> claim rank, with 0 reserved for the classifier
// token (and any other position that has no claim index). Positions at or
// beyond real_len are padding; the default pipeline never emits padding.
struct TokenClaimMap {
  static constexpr std::int32_t kSentinel = 0;

  std::vector<std::int32_t> phi;
  std::int32_t n_claims = 0;
  std::size_t real_len = 0;

  std::size_t length() const { return phi.size(); }
  bool is_sentinel(std::size_t u) const { return phi[u] == kSentinel; }
  bool is_padding(std::size_t u) const { return u >= real_len; }
};

struct TokenizedPatent {
  TokenSequence sequence;
  TokenClaimMap map;
  std::size_t dropped_tokens = 0;  // lost to truncation, reported not raised
};

// Emits [CLS] then claim tokens in claim-number order, truncating at max_len
// on whole-token boundaries. Requires max_len >= 2.
TokenizedPatent tokenize_and_map(const Patent& patent, std::size_t max_len = 512,
                                 const Tokenizer& tokenizer = default_tokenizer());

}  // namespace claimgraph
