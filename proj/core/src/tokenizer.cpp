#include "claimgraph/tokenizer.hpp"

#include <cctype>

namespace claimgraph {

namespace {

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
}

}  // namespace

std::vector<std::string> WhitespaceTokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (is_word_char(text[i])) {
      std::size_t b = i;
      while (i < n && is_word_char(text[i])) ++i;
      tokens.emplace_back(text.substr(b, i - b));
    } else {
      tokens.emplace_back(1, text[i]);
      ++i;
    }
  }
  return tokens;
}

const Tokenizer& default_tokenizer() {
  static const WhitespaceTokenizer tokenizer;
  return tokenizer;
}

TokenizedPatent tokenize_and_map(const Patent& patent, std::size_t max_len,
                                 const Tokenizer& tokenizer) {
  TokenizedPatent out;
  out.sequence.tokens.reserve(max_len);
  out.sequence.tokens.emplace_back(kClsToken);
  out.map.phi.push_back(TokenClaimMap::kSentinel);
  out.map.n_claims = patent.claim_count();

  // Independent claims anchor the hierarchy and appear first, so truncating
  // at the tail keeps the structurally informative prefix.
  for (int rank = 1; rank <= patent.claim_count(); ++rank) {
    auto claim_tokens = tokenizer.tokenize(patent.claim_at_rank(rank).text);
    for (auto& tok : claim_tokens) {
      if (out.sequence.tokens.size() >= max_len) {
        ++out.dropped_tokens;
        continue;
      }
      out.sequence.tokens.push_back(std::move(tok));
      out.map.phi.push_back(rank);
    }
  }
  out.map.real_len = out.map.phi.size();
  return out;
}

}  // namespace claimgraph
