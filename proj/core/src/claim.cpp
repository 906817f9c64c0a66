#include "claimgraph/claim.hpp"

#include <algorithm>
#include <cctype>

#include "claimgraph/errors.hpp"

namespace claimgraph {

std::string trim_copy(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Patent Patent::make(std::string patent_id, std::vector<Claim> claims) {
  if (claims.empty()) {
    throw MalformedRecord("patent '" + patent_id + "' has no claims");
  }
  for (auto& c : claims) {
    c.text = trim_copy(c.text);
    if (c.number < 1) {
      throw MalformedRecord("patent '" + patent_id + "' has claim number < 1");
    }
    if (c.text.empty()) {
      throw MalformedRecord("patent '" + patent_id + "' has an empty claim text");
    }
  }
  std::sort(claims.begin(), claims.end(),
            [](const Claim& a, const Claim& b) { return a.number < b.number; });
  for (std::size_t i = 1; i < claims.size(); ++i) {
    if (claims[i].number == claims[i - 1].number) {
      throw DuplicateClaimNumber("patent '" + patent_id + "' repeats claim number " +
                                 std::to_string(claims[i].number));
    }
  }
  Patent p;
  p.patent_id_ = std::move(patent_id);
  p.claims_ = std::move(claims);
  return p;
}

int Patent::rank_of_number(int number) const {
  auto it = std::lower_bound(claims_.begin(), claims_.end(), number,
                             [](const Claim& c, int n) { return c.number < n; });
  if (it == claims_.end() || it->number != number) return 0;
  return static_cast<int>(it - claims_.begin()) + 1;
}

namespace {

// Line starting a new claim: optional whitespace, digits, optional
// whitespace, a period. Returns the claim number and the offset of the text
// following the period, or 0 when the line is not a claim head.
int match_claim_head(std::string_view line, std::size_t* text_begin) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  std::size_t digits_begin = i;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i == digits_begin) return 0;
  std::size_t digits_end = i;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (i >= line.size() || line[i] != '.') return 0;
  *text_begin = i + 1;
  int number = 0;
  for (std::size_t d = digits_begin; d < digits_end; ++d) {
    number = number * 10 + (line[d] - '0');
  }
  return number;
}

}  // namespace

std::vector<Claim> segment_claims_block(std::string_view block) {
  std::vector<Claim> claims;
  std::string current_text;
  int current_number = 0;

  auto flush = [&] {
    if (current_number > 0) {
      claims.push_back({current_number, trim_copy(current_text)});
    }
    current_text.clear();
  };

  std::size_t pos = 0;
  while (pos <= block.size()) {
    std::size_t eol = block.find('\n', pos);
    std::string_view line =
        eol == std::string_view::npos ? block.substr(pos) : block.substr(pos, eol - pos);
    std::size_t text_begin = 0;
    if (int number = match_claim_head(line, &text_begin); number > 0) {
      flush();
      current_number = number;
      current_text = trim_copy(line.substr(text_begin));
    } else if (current_number > 0) {
      std::string cont = trim_copy(line);
      if (!cont.empty()) {
        if (!current_text.empty()) current_text += ' ';
        current_text += cont;
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  flush();

  if (claims.empty()) {
    throw MalformedRecord("claims block contains no numbered claim");
  }
  return claims;
}

}  // namespace claimgraph
