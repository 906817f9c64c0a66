#pragma once

#include <stdexcept>
#include <string>

namespace claimgraph {

// Input record cannot be turned into a valid Patent (no claims, bad JSON, ...).
struct MalformedRecord : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two claims in one patent share a printed claim number.
struct DuplicateClaimNumber : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An integrated graph carries more than one relation for an ordered claim pair.
// This is always an integration bug, never a data condition.
struct ExclusivityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A token-claim map references a claim index outside the adjacency set.
struct IndexMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// More than one typed adjacency bit is set for an off-diagonal claim pair.
struct AmbiguousRelation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An attention row has no unmasked entry (cannot occur with valid inputs).
struct DegenerateRow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cosine similarity of a zero-norm vector.
struct ZeroVector : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace claimgraph
