#include "claimgraph/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "claimgraph/errors.hpp"

namespace claimgraph {

namespace {

// ---------------------------------------------------------------------------
// Word scanning
// ---------------------------------------------------------------------------

struct Word {
  std::string text;  // lowercased
  bool is_punct = false;
  bool is_digits = false;
};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
}

std::vector<Word> split_words(std::string_view text) {
  std::vector<Word> words;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (!is_word_char(c)) {
      words.push_back({std::string(1, c), true, false});
      ++i;
      continue;
    }
    std::size_t b = i;
    bool all_digits = true;
    while (i < n && is_word_char(text[i])) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) all_digits = false;
      ++i;
    }
    Word w;
    w.text.reserve(i - b);
    for (std::size_t k = b; k < i; ++k) {
      w.text.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[k]))));
    }
    w.is_digits = all_digits;
    words.push_back(std::move(w));
  }
  return words;
}

// ---------------------------------------------------------------------------
// Word classes
// ---------------------------------------------------------------------------

const std::unordered_set<std::string>& function_words() {
  static const std::unordered_set<std::string> set{
      // determiners
      "a", "an", "the", "said", "this", "that", "these", "those", "each", "every", "any",
      "some", "no", "all", "both", "such", "another", "other", "one",
      // prepositions and conjunctions
      "of", "to", "for", "with", "in", "on", "at", "by", "from", "and", "or", "nor", "as",
      "into", "onto", "within", "without", "through", "over", "under", "between", "among",
      "along", "upon", "via", "toward", "towards", "about", "above", "below", "across",
      "against", "around", "behind", "during", "per",
      // auxiliaries and common verbs
      "is", "are", "was", "were", "be", "being", "been", "has", "have", "having", "had",
      "can", "may", "will", "shall", "would", "should", "could", "do", "does", "did",
      // claim-drafting vocabulary
      "wherein", "whereby", "thereof", "therein", "thereto", "thereon", "therefrom",
      "comprising", "comprises", "comprise", "including", "includes", "include",
      "consisting", "consists", "consist", "according", "further", "when", "where",
      "which", "who", "whose", "whom", "if", "then", "than", "so", "not", "least",
      "more", "most", "claim", "claims",
  };
  return set;
}

bool is_determiner(const std::string& w) {
  return w == "a" || w == "an" || w == "the" || w == "said";
}

ArticleKind determiner_kind(const std::string& w) {
  if (w == "a" || w == "an") return ArticleKind::indefinite;
  if (w == "the") return ArticleKind::definite;
  return ArticleKind::demonstrative;  // said
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Words allowed between a subject noun phrase and its verb.
bool is_subject_gap_word(const std::string& w) {
  static const std::unordered_set<std::string> aux{
      "is", "are", "was", "were", "be", "being", "been", "has", "have", "had", "further"};
  return aux.contains(w) || (w.size() > 3 && ends_with(w, "ly"));
}

// Prepositions allowed between a verb and its object noun phrase.
bool is_object_gap_word(const std::string& w) {
  static const std::unordered_set<std::string> preps{
      "to", "with", "on", "onto", "in", "into", "at", "by", "from", "within", "through",
      "over", "under", "upon", "between", "along", "above", "below", "behind", "around",
      "against", "across"};
  return preps.contains(w);
}

}  // namespace

// ---------------------------------------------------------------------------
// VerbLexicon
// ---------------------------------------------------------------------------

VerbLexicon VerbLexicon::from_lemmas(const std::vector<std::string>& lemmas) {
  VerbLexicon lex;
  for (const auto& raw : lemmas) {
    std::string lemma;
    for (char c : raw) lemma.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lemma.empty()) continue;
    lex.lemmas_.push_back(lemma);
    lex.bases_.insert(lemma);
    lex.form_to_lemma_[lemma] = lemma;
    // -s / -es, -ed / -d, -ing with the usual final-e handling.
    if (ends_with(lemma, "e")) {
      lex.form_to_lemma_[lemma + "s"] = lemma;
      lex.form_to_lemma_[lemma + "d"] = lemma;
      lex.form_to_lemma_[lemma.substr(0, lemma.size() - 1) + "ing"] = lemma;
    } else if (ends_with(lemma, "h") || ends_with(lemma, "s") || ends_with(lemma, "x")) {
      lex.form_to_lemma_[lemma + "es"] = lemma;
      lex.form_to_lemma_[lemma + "ed"] = lemma;
      lex.form_to_lemma_[lemma + "ing"] = lemma;
    } else {
      lex.form_to_lemma_[lemma + "s"] = lemma;
      lex.form_to_lemma_[lemma + "ed"] = lemma;
      lex.form_to_lemma_[lemma + "ing"] = lemma;
    }
  }
  return lex;
}

const VerbLexicon& VerbLexicon::default_lexicon() {
  static const VerbLexicon lex = VerbLexicon::from_lemmas(
      {"couple", "connect", "attach", "mount", "dispose", "position", "support", "engage",
       "receive", "extend", "interpose", "configure", "adapt"});
  return lex;
}

const std::string* VerbLexicon::lemma_of(const std::string& word) const {
  auto it = form_to_lemma_.find(word);
  return it == form_to_lemma_.end() ? nullptr : &it->second;
}

bool VerbLexicon::is_base(const std::string& word) const { return bases_.contains(word); }

const StopTerms& default_stop_terms() {
  static const StopTerms stop{"method",    "system", "device",    "apparatus", "invention",
                              "claim",     "plurality", "one",    "portion"};
  return stop;
}

// ---------------------------------------------------------------------------
// Noun phrases and SVO patterns
// ---------------------------------------------------------------------------

namespace {

// True when `word` may continue a noun-phrase span. A base-form lexicon
// lemma counts as content only as the first word of the span, so "a support
// bracket" keeps its head noun while "the arms couple the bracket" stops the
// span at the verb.
bool continues_noun_phrase(const Word& word, bool first_in_span, const VerbLexicon& lexicon) {
  if (word.is_punct || word.is_digits) return false;
  if (function_words().contains(word.text)) return false;
  if (const std::string* lemma = lexicon.lemma_of(word.text)) {
    const bool base_form = *lemma == word.text;
    if (!base_form) return false;
    return first_in_span;
  }
  return true;
}

struct NounPhraseScan {
  std::vector<TermOccurrence> occurrences;
  std::vector<int> span_of_word;  // word index -> occurrence index or -1
};

NounPhraseScan scan_noun_phrases(const std::vector<Word>& words, const VerbLexicon& lexicon) {
  NounPhraseScan scan;
  scan.span_of_word.assign(words.size(), -1);
  std::size_t i = 0;
  while (i < words.size()) {
    if (words[i].is_punct || !is_determiner(words[i].text)) {
      ++i;
      continue;
    }
    std::size_t det_begin = i;
    ArticleKind kind = determiner_kind(words[i].text);
    while (i + 1 < words.size() && !words[i + 1].is_punct && is_determiner(words[i + 1].text)) {
      ++i;
      kind = determiner_kind(words[i].text);  // the last determiner decides
    }
    std::size_t span_begin = i + 1;
    std::size_t j = span_begin;
    while (j < words.size() && continues_noun_phrase(words[j], j == span_begin, lexicon)) {
      ++j;
    }
    if (j > span_begin) {
      TermOccurrence occ;
      occ.article = kind;
      occ.det_word = det_begin;
      occ.begin_word = span_begin;
      occ.end_word = j;
      for (std::size_t k = span_begin; k < j; ++k) {
        if (k > span_begin) occ.term += ' ';
        occ.term += words[k].text;
      }
      int idx = static_cast<int>(scan.occurrences.size());
      for (std::size_t k = span_begin; k < j; ++k) scan.span_of_word[k] = idx;
      scan.occurrences.push_back(std::move(occ));
      i = j;
    } else {
      i = span_begin;
    }
  }
  return scan;
}

std::vector<ComponentTriplet> scan_triplets(const std::vector<Word>& words,
                                            const NounPhraseScan& nps,
                                            const VerbLexicon& lexicon) {
  std::vector<ComponentTriplet> triplets;

  // Occurrence lookup by last content word / by determiner position.
  std::vector<int> ends_at(words.size(), -1);
  std::vector<int> det_at(words.size(), -1);
  for (std::size_t k = 0; k < nps.occurrences.size(); ++k) {
    const auto& occ = nps.occurrences[k];
    ends_at[occ.end_word - 1] = static_cast<int>(k);
    det_at[occ.det_word] = static_cast<int>(k);
  }

  for (std::size_t v = 0; v < words.size(); ++v) {
    if (words[v].is_punct) continue;
    if (nps.span_of_word[v] >= 0) continue;  // consumed by a noun phrase
    const std::string* lemma = lexicon.lemma_of(words[v].text);
    if (!lemma) continue;

    // "configured to receive", "adapted to engage": the inner verb is the one
    // doing the functional work.
    std::size_t verb_end = v;
    const std::string* effective = lemma;
    if (v + 2 < words.size() && !words[v + 1].is_punct && words[v + 1].text == "to" &&
        !words[v + 2].is_punct && nps.span_of_word[v + 2] < 0) {
      if (const std::string* inner = lexicon.lemma_of(words[v + 2].text)) {
        verb_end = v + 2;
        effective = inner;
      }
    }

    // Subject: the noun phrase ending immediately left of the verb group,
    // across auxiliary/adverb gaps ("is", "being", "rotatably").
    int subject = -1;
    if (v > 0) {
      std::size_t j = v - 1;
      while (j > 0 && !words[j].is_punct && is_subject_gap_word(words[j].text)) --j;
      if (!words[j].is_punct) subject = ends_at[j];
    }
    if (subject < 0) continue;

    // Object: the first noun phrase right of the verb group, across at most
    // a run of prepositions ("to", "between", "on").
    int object = -1;
    std::size_t j = verb_end + 1;
    while (j < words.size() && !words[j].is_punct && is_object_gap_word(words[j].text)) ++j;
    if (j < words.size() && !words[j].is_punct && det_at[j] >= 0) object = det_at[j];
    if (object < 0) continue;

    triplets.push_back({nps.occurrences[subject].term, *effective,
                        nps.occurrences[object].term, 0});
    if (verb_end > v) v = verb_end;
  }
  return triplets;
}

}  // namespace

ClaimAnalysis analyze_claim(std::string_view text, const VerbLexicon& lexicon) {
  const std::vector<Word> words = split_words(text);
  NounPhraseScan nps = scan_noun_phrases(words, lexicon);
  ClaimAnalysis analysis;
  analysis.triplets = scan_triplets(words, nps, lexicon);
  analysis.occurrences = std::move(nps.occurrences);
  return analysis;
}

std::vector<TermOccurrence> extract_noun_phrases(std::string_view text) {
  return analyze_claim(text, VerbLexicon::default_lexicon()).occurrences;
}

std::vector<TermOccurrence> extract_noun_phrases(const Claim& claim) {
  return extract_noun_phrases(claim.text);
}

std::vector<ComponentTriplet> extract_components(std::string_view text,
                                                 const VerbLexicon& lexicon) {
  return analyze_claim(text, lexicon).triplets;
}

std::vector<ComponentTriplet> extract_components(const Claim& claim,
                                                 const VerbLexicon& lexicon) {
  return extract_components(claim.text, lexicon);
}

std::vector<std::string> collect_components(const std::vector<ComponentTriplet>& triplets,
                                            std::size_t max_components) {
  std::vector<std::string> components;
  auto add = [&](const std::string& term) {
    if (components.size() >= max_components) return;
    if (std::find(components.begin(), components.end(), term) != components.end()) return;
    components.push_back(term);
  };
  for (const auto& t : triplets) {
    add(t.subject);
    add(t.object);
  }
  return components;
}

std::vector<ClaimAnalysis> analyze_patent(const Patent& patent, const VerbLexicon& lexicon) {
  std::vector<ClaimAnalysis> analyses;
  analyses.reserve(patent.claims().size());
  for (int rank = 1; rank <= patent.claim_count(); ++rank) {
    ClaimAnalysis a = analyze_claim(patent.claim_at_rank(rank).text, lexicon);
    for (auto& occ : a.occurrences) occ.claim = rank;
    for (auto& t : a.triplets) t.claim = rank;
    analyses.push_back(std::move(a));
  }
  return analyses;
}

// ---------------------------------------------------------------------------
// Citation extraction
// ---------------------------------------------------------------------------

namespace {

struct CitationMatch {
  std::size_t begin_word = 0;  // first word of the preposition
  std::size_t end_word = 0;    // one past the last consumed token
  std::vector<int> numbers;    // expanded antecedent claim numbers
};

bool word_is(const std::vector<Word>& words, std::size_t i, std::string_view text) {
  return i < words.size() && !words[i].is_punct && words[i].text == text;
}

bool word_is_number(const std::vector<Word>& words, std::size_t i, int* value) {
  if (i >= words.size() || !words[i].is_digits) return false;
  long v = 0;
  for (char c : words[i].text) {
    v = v * 10 + (c - '0');
    if (v > 1000000) return false;
  }
  *value = static_cast<int>(v);
  return true;
}

// <prep> ::= of | according to | as in | as claimed in | as set forth in
// Returns one past the preposition, or 0 when none starts at i.
std::size_t match_preposition(const std::vector<Word>& words, std::size_t i) {
  if (word_is(words, i, "of")) return i + 1;
  if (word_is(words, i, "according") && word_is(words, i + 1, "to")) return i + 2;
  if (word_is(words, i, "as")) {
    if (word_is(words, i + 1, "in")) return i + 2;
    if (word_is(words, i + 1, "claimed") && word_is(words, i + 2, "in")) return i + 3;
    if (word_is(words, i + 1, "set") && word_is(words, i + 2, "forth") &&
        word_is(words, i + 3, "in"))
      return i + 4;
  }
  return 0;
}

// Optional list prefix: any [one] of | one of | either of.
std::size_t match_list_prefix(const std::vector<Word>& words, std::size_t i) {
  if (word_is(words, i, "any")) {
    if (word_is(words, i + 1, "one") && word_is(words, i + 2, "of")) return i + 3;
    if (word_is(words, i + 1, "of")) return i + 2;
  }
  if (word_is(words, i, "one") && word_is(words, i + 1, "of")) return i + 2;
  if (word_is(words, i, "either") && word_is(words, i + 1, "of")) return i + 2;
  return i;
}

// item ::= N | N to M | N through M   (inclusive ranges)
bool parse_item(const std::vector<Word>& words, std::size_t* i, std::vector<int>* numbers) {
  int first = 0;
  if (!word_is_number(words, *i, &first)) return false;
  std::size_t j = *i + 1;
  int last = first;
  if ((word_is(words, j, "to") || word_is(words, j, "through"))) {
    int m = 0;
    if (word_is_number(words, j + 1, &m)) {
      last = m;
      j += 2;
    }
  }
  for (int n = first; n <= last; ++n) numbers->push_back(n);
  *i = j;
  return true;
}

// numlist ::= item (sep item)*
// sep     ::= "," [or|and] | or|and [claim[s]]
std::size_t parse_number_list(const std::vector<Word>& words, std::size_t i,
                              std::vector<int>* numbers) {
  if (!parse_item(words, &i, numbers)) return 0;
  while (true) {
    std::size_t j = i;
    if (j < words.size() && words[j].is_punct && words[j].text == ",") {
      ++j;
      if (word_is(words, j, "or") || word_is(words, j, "and")) ++j;
    } else if (word_is(words, j, "or") || word_is(words, j, "and")) {
      ++j;
      if (word_is(words, j, "claim") || word_is(words, j, "claims")) ++j;
    } else {
      break;
    }
    std::size_t k = j;
    if (!parse_item(words, &k, numbers)) break;
    i = k;
  }
  return i;
}

std::vector<CitationMatch> scan_citations(const std::vector<Word>& words) {
  std::vector<CitationMatch> matches;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].is_punct) continue;
    std::size_t after_prep = match_preposition(words, i);
    if (after_prep == 0) continue;
    std::size_t j = match_list_prefix(words, after_prep);
    if (!(word_is(words, j, "claim") || word_is(words, j, "claims"))) continue;
    ++j;
    CitationMatch m;
    m.begin_word = i;
    std::size_t end = parse_number_list(words, j, &m.numbers);
    if (end == 0 || m.numbers.empty()) continue;
    m.end_word = end;
    matches.push_back(std::move(m));
    i = end - 1;
  }
  return matches;
}

}  // namespace

std::vector<TypedEdge> extract_citations(const Patent& patent, Diagnostics& diag) {
  std::vector<TypedEdge> edges;
  for (int rank = 1; rank <= patent.claim_count(); ++rank) {
    const std::vector<Word> words = split_words(patent.claim_at_rank(rank).text);
    const std::vector<CitationMatch> matches = scan_citations(words);
    if (matches.empty()) continue;

    // Preamble gate: references count only before the first "wherein",
    // "comprising" or the first comma after the first reference (commas
    // inside a claim list are part of the reference, not terminators).
    std::size_t terminator = words.size();
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (!words[i].is_punct &&
          (words[i].text == "wherein" || words[i].text == "comprising")) {
        terminator = i;
        break;
      }
    }
    for (std::size_t i = matches.front().end_word; i < terminator; ++i) {
      if (words[i].is_punct && words[i].text == ",") {
        terminator = i;
        break;
      }
    }

    for (const auto& m : matches) {
      if (m.begin_word >= terminator) break;
      for (int number : m.numbers) {
        int src = patent.rank_of_number(number);
        if (src == 0 || src == rank) {
          ++diag.dropped_refs;
          continue;
        }
        edges.push_back({src, rank, Relation::cite});
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<TypedEdge> extract_citations(const Patent& patent) {
  Diagnostics diag;
  return extract_citations(patent, diag);
}

// ---------------------------------------------------------------------------
// Definition loci, term flow, functional coupling
// ---------------------------------------------------------------------------

DefinitionLoci compute_definition_loci(
    int n_claims, const std::vector<std::vector<TermOccurrence>>& occurrences_by_claim,
    double rho, const StopTerms& stop_terms) {
  struct TermInfo {
    std::vector<bool> in_claim;
    int first_indefinite = 0;
  };
  std::map<std::string, TermInfo> terms;
  for (int rank = 1; rank <= n_claims; ++rank) {
    for (const auto& occ : occurrences_by_claim[rank - 1]) {
      auto& info = terms[occ.term];
      if (info.in_claim.empty()) info.in_claim.assign(n_claims, false);
      info.in_claim[rank - 1] = true;
      if (occ.article == ArticleKind::indefinite &&
          (info.first_indefinite == 0 || rank < info.first_indefinite)) {
        info.first_indefinite = rank;
      }
    }
  }

  DefinitionLoci loci;
  const double threshold = rho * n_claims;
  for (const auto& [term, info] : terms) {
    if (info.first_indefinite == 0) continue;  // never introduced indefinitely
    if (stop_terms.contains(term)) continue;
    const auto present =
        static_cast<double>(std::count(info.in_claim.begin(), info.in_claim.end(), true));
    if (present > threshold) continue;  // ubiquitous
    loci.locus.emplace(term, info.first_indefinite);
  }
  return loci;
}

std::vector<TypedEdge> extract_term_flow(
    int n_claims, const std::vector<std::vector<TermOccurrence>>& occurrences_by_claim,
    const DefinitionLoci& loci, const BoolMatrix& cite_closure) {
  std::vector<TypedEdge> edges;
  for (int dst = 1; dst <= n_claims; ++dst) {
    for (const auto& occ : occurrences_by_claim[dst - 1]) {
      if (occ.article != ArticleKind::definite && occ.article != ArticleKind::demonstrative) {
        continue;
      }
      auto src = loci.find(occ.term);
      if (!src || *src == dst) continue;
      if (cite_closure.at(static_cast<std::size_t>(*src - 1),
                          static_cast<std::size_t>(dst - 1))) {
        continue;
      }
      edges.push_back({*src, dst, Relation::term});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<TypedEdge> extract_func_coupling(
    int n_claims, const std::vector<std::vector<std::string>>& components_by_claim,
    const DefinitionLoci& loci, const BoolMatrix& cite_closure) {
  std::vector<TypedEdge> edges;
  for (int dst = 1; dst <= n_claims; ++dst) {
    for (const auto& component : components_by_claim[dst - 1]) {
      auto src = loci.find(component);
      if (!src || *src == dst) continue;
      if (cite_closure.at(static_cast<std::size_t>(*src - 1),
                          static_cast<std::size_t>(dst - 1))) {
        continue;
      }
      edges.push_back({*src, dst, Relation::func});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// ---------------------------------------------------------------------------
// Lexicon files
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> read_entries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedRecord("cannot open lexicon file: " + path);
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string entry = trim_copy(line);
    if (!entry.empty()) entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace

VerbLexicon load_verb_lexicon(const std::string& path) {
  return VerbLexicon::from_lemmas(read_entries(path));
}

StopTerms load_stop_terms(const std::string& path) {
  StopTerms stop;
  for (auto& entry : read_entries(path)) {
    std::string lower;
    for (char c : entry) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    stop.insert(std::move(lower));
  }
  return stop;
}

}  // namespace claimgraph
