#include "claimgraph/pipeline.hpp"

namespace claimgraph {

ClaimDependencyGraph build_cdg(const Patent& patent, const ExtractionOptions& options) {
  Diagnostics diag;
  const int n = patent.claim_count();

  const std::vector<TypedEdge> cite = extract_citations(patent, diag);
  bool cycle = false;
  const BoolMatrix closure = cite_transitive_closure(cite, n, &cycle);
  diag.cite_cycle = cycle;

  const std::vector<ClaimAnalysis> analyses = analyze_patent(patent, options.lexicon);
  std::vector<std::vector<TermOccurrence>> occurrences(static_cast<std::size_t>(n));
  std::vector<std::vector<std::string>> components(static_cast<std::size_t>(n));
  for (int rank = 1; rank <= n; ++rank) {
    occurrences[static_cast<std::size_t>(rank - 1)] = analyses[static_cast<std::size_t>(rank - 1)].occurrences;
    components[static_cast<std::size_t>(rank - 1)] = collect_components(
        analyses[static_cast<std::size_t>(rank - 1)].triplets, options.max_components);
  }

  const DefinitionLoci loci =
      compute_definition_loci(n, occurrences, options.rho, options.stop_terms);
  const std::vector<TypedEdge> term = extract_term_flow(n, occurrences, loci, closure);
  const std::vector<TypedEdge> func = extract_func_coupling(n, components, loci, closure);

  ClaimDependencyGraph cdg = integrate_edges(cite, term, func, n);
  cdg.diagnostics = diag;
  return cdg;
}

}  // namespace claimgraph
