#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace claimgraph {

// One numbered claim as printed in the document.
struct Claim {
  int number = 0;    // printed claim number, >= 1, unique within a patent
  std::string text;  // full claim body including preamble, non-empty

  friend bool operator==(const Claim&, const Claim&) = default;
};

// A patent document as an ordered list of claims. Claim numbers are strictly
// increasing but may have gaps (cancelled claims); graph matrices index
// claims by dense rank 1..n, and the number->rank table is kept here.
class Patent {
 public:
  // Validates invariants and sorts claims by number.
  // Throws MalformedRecord / DuplicateClaimNumber.
  static Patent make(std::string patent_id, std::vector<Claim> claims);

  const std::string& patent_id() const { return patent_id_; }
  const std::vector<Claim>& claims() const { return claims_; }
  int claim_count() const { return static_cast<int>(claims_.size()); }

  // Rank (1..n) of a printed claim number, 0 when the number does not exist.
  int rank_of_number(int number) const;

  const Claim& claim_at_rank(int rank) const { return claims_[rank - 1]; }

 private:
  std::string patent_id_;
  std::vector<Claim> claims_;  // sorted by number
};

// Segments an undifferentiated claims block at lines starting with a claim
// number followed by a period. Continuation lines are joined with a space.
// Throws MalformedRecord when no claim can be segmented.
std::vector<Claim> segment_claims_block(std::string_view block);

std::string trim_copy(std::string_view s);

}  // namespace claimgraph
