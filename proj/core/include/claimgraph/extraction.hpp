#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "claimgraph/claim.hpp"
#include "claimgraph/matrix.hpp"
#include "claimgraph/types.hpp"

namespace claimgraph {

// ---------------------------------------------------------------------------
// Lexicons
// ---------------------------------------------------------------------------

// Functional verb lexicon. Inflected forms (-s/-es, -ed/-d, -ing) are
// generated from each lemma; matching is on lowercased words.
class VerbLexicon {
 public:
  static VerbLexicon from_lemmas(const std::vector<std::string>& lemmas);

  // The 13 default functional verbs.
  static const VerbLexicon& default_lexicon();

  // Lemma for any known form (base or inflected), nullptr otherwise.
  const std::string* lemma_of(const std::string& word) const;
  bool is_base(const std::string& word) const;

  const std::vector<std::string>& lemmas() const { return lemmas_; }

 private:
  std::vector<std::string> lemmas_;
  std::unordered_map<std::string, std::string> form_to_lemma_;
  std::unordered_set<std::string> bases_;
};

using StopTerms = std::unordered_set<std::string>;

// {method, system, device, apparatus, invention, claim, plurality, one, portion}
const StopTerms& default_stop_terms();

// ---------------------------------------------------------------------------
// Claim-level analysis
// ---------------------------------------------------------------------------

enum class ArticleKind : std::uint8_t { indefinite, definite, demonstrative, bare };

struct TermOccurrence {
  std::string term;  // lowercase, whitespace-normalized noun phrase
  int claim = 0;     // claim rank, 0 when produced from bare text
  ArticleKind article = ArticleKind::bare;

  // Word-index span inside the analyzed claim (used to align SVO patterns).
  std::size_t det_word = 0;    // index of the first determiner word
  std::size_t begin_word = 0;  // first content word
  std::size_t end_word = 0;    // one past the last content word
};

struct ComponentTriplet {
  std::string subject;
  std::string verb;  // lexicon lemma
  std::string object;
  int claim = 0;
};

struct ClaimAnalysis {
  std::vector<TermOccurrence> occurrences;
  std::vector<ComponentTriplet> triplets;
};

// Single shared scan: noun phrases after a/an/the/said plus rule-based SVO
// patterns around lexicon verbs (active, passive, "configured to <verb>").
ClaimAnalysis analyze_claim(std::string_view text, const VerbLexicon& lexicon);

std::vector<TermOccurrence> extract_noun_phrases(const Claim& claim);
std::vector<TermOccurrence> extract_noun_phrases(std::string_view text);

std::vector<ComponentTriplet> extract_components(
    const Claim& claim, const VerbLexicon& lexicon = VerbLexicon::default_lexicon());
std::vector<ComponentTriplet> extract_components(
    std::string_view text, const VerbLexicon& lexicon = VerbLexicon::default_lexicon());

// Distinct component strings in first-occurrence order (subject before
// object within a triplet), capped at max_components per claim.
std::vector<std::string> collect_components(const std::vector<ComponentTriplet>& triplets,
                                             std::size_t max_components = 8);

// ---------------------------------------------------------------------------
// Edge extractors
// ---------------------------------------------------------------------------

// Explicit citation edges from claim preambles. Multi-claim references
// ("claims 1 to 3", "claims 1, 2, or 3") expand to one edge per antecedent;
// references to nonexistent claim numbers are dropped and counted.
std::vector<TypedEdge> extract_citations(const Patent& patent, Diagnostics& diag);
std::vector<TypedEdge> extract_citations(const Patent& patent);

// def(t): lowest-ranked claim with an indefinite occurrence of t. Terms on
// the stop list and terms present in more than rho*n claims are excluded.
struct DefinitionLoci {
  std::map<std::string, int> locus;  // term -> defining claim rank

  std::optional<int> find(const std::string& term) const {
    auto it = locus.find(term);
    if (it == locus.end()) return std::nullopt;
    return it->second;
  }
};

DefinitionLoci compute_definition_loci(
    int n_claims, const std::vector<std::vector<TermOccurrence>>& occurrences_by_claim,
    double rho = 0.8, const StopTerms& stop_terms = default_stop_terms());

// Term-flow edges: definition locus -> claim with a definite/demonstrative
// reference, skipping pairs reachable in the cite transitive closure.
// One edge per claim pair regardless of how many terms connect it.
std::vector<TypedEdge> extract_term_flow(
    int n_claims, const std::vector<std::vector<TermOccurrence>>& occurrences_by_claim,
    const DefinitionLoci& loci, const BoolMatrix& cite_closure);

// Functional-coupling edges: a capped component of claim i matching a term
// defined in claim j, same closure restriction, deduplicated per pair.
std::vector<TypedEdge> extract_func_coupling(
    int n_claims, const std::vector<std::vector<std::string>>& components_by_claim,
    const DefinitionLoci& loci, const BoolMatrix& cite_closure);

// Per-claim analyses for a whole patent, with claim ranks filled in.
std::vector<ClaimAnalysis> analyze_patent(
    const Patent& patent, const VerbLexicon& lexicon = VerbLexicon::default_lexicon());

// ---------------------------------------------------------------------------
// Lexicon files: one entry per line, '#' comments, blank lines ignored.
// ---------------------------------------------------------------------------

VerbLexicon load_verb_lexicon(const std::string& path);
StopTerms load_stop_terms(const std::string& path);

}  // namespace claimgraph
