#include "claimgraph/synthetic.hpp"

#include <array>
#include <algorithm>

namespace claimgraph {

namespace {

const std::array<const char*, 12> kFirsts = {"alpha",  "beta", "gamma", "delta",
                                             "epsilon", "zeta", "theta", "iota",
                                             "kappa",  "sigma", "omega", "micro"};
const std::array<const char*, 14> kSeconds = {"bracket", "flange",  "spindle", "rotor",
                                              "stator",  "plunger", "gasket",  "manifold",
                                              "piston",  "nozzle",  "sleeve",  "collar",
                                              "shaft",   "carrier"};

// Passive verb groups; every lemma of the default lexicon appears.
const std::array<const char*, 13> kCouplings = {
    "is coupled to",      "is connected to",  "is attached to",  "is mounted on",
    "is disposed in",     "is positioned over", "is supported by", "is engaged with",
    "is received in",     "extends along",    "is interposed between",
    "is configured to receive", "is adapted to engage"};

const std::array<const char*, 5> kPreps = {"of", "according to", "as in", "as claimed in",
                                           "as set forth in"};

std::string term_name(std::size_t index) {
  std::string name = kFirsts[index % kFirsts.size()];
  name += ' ';
  name += kSeconds[(index / kFirsts.size() + index) % kSeconds.size()];
  if (index >= kFirsts.size() * kSeconds.size()) {
    name += " unit";
  }
  return name;
}

}  // namespace

Patent synthetic_patent(std::mt19937_64& rng, const std::string& patent_id,
                        const SyntheticOptions& options) {
  const int span = options.max_claims - options.min_claims + 1;
  const int n = options.min_claims + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(span)));

  std::vector<Claim> claims;
  std::vector<std::string> defined;   // term introduced by each claim, by rank
  std::vector<int> family_head(static_cast<std::size_t>(n) + 1, 1);
  std::size_t next_term = 0;

  auto new_term = [&] { return term_name(next_term++); };

  for (int rank = 1; rank <= n; ++rank) {
    std::string text;
    const bool independent =
        rank == 1 || canonical_double(rng) < options.independent_prob;

    if (independent) {
      const std::string head = new_term();
      const std::string part = new_term();
      text = "A " + head + " comprising a " + part;
      if (canonical_double(rng) < 0.5) {
        const std::string extra = new_term();
        text += " and a " + extra;
        text += ", wherein the " + part + ' ' + kCouplings[uniform_index(rng, kCouplings.size())] +
                " the " + extra;
      }
      text += ".";
      family_head[static_cast<std::size_t>(rank)] = rank;
      defined.push_back(head);
    } else {
      const int target = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(rank - 1)));
      const int head_rank = family_head[static_cast<std::size_t>(target)];
      family_head[static_cast<std::size_t>(rank)] = head_rank;
      const std::string& head = defined[static_cast<std::size_t>(head_rank - 1)];
      text = "The " + head + ' ' + kPreps[uniform_index(rng, kPreps.size())] + ' ';

      const double multi = canonical_double(rng);
      if (multi < options.bad_ref_prob) {
        text += "claim " + std::to_string(n + 3 + static_cast<int>(uniform_index(rng, 4)));
      } else if (multi < options.bad_ref_prob + options.multi_cite_prob && target >= 2) {
        const int low = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(target)));
        if (canonical_double(rng) < 0.5) {
          text += "any one of claims " + std::to_string(low) + " to " + std::to_string(target);
        } else {
          text += "claims " + std::to_string(low) + " or " + std::to_string(target);
        }
      } else {
        text += "claim " + std::to_string(target);
      }

      const std::string fresh = new_term();
      const double body = canonical_double(rng);
      if (body < options.term_ref_prob && rank > 1) {
        const std::string& old = defined[uniform_index(rng, defined.size())];
        text += ", wherein the " + old + ' ' +
                kCouplings[uniform_index(rng, kCouplings.size())] + " a " + fresh + ".";
      } else if (body < options.term_ref_prob + options.func_prob && rank > 1) {
        // Indefinite re-mention: a functional match without a definite
        // reference, so the func extractor fires alone.
        const std::string& old = defined[uniform_index(rng, defined.size())];
        text += ", wherein a " + old + ' ' +
                kCouplings[uniform_index(rng, kCouplings.size())] + " a " + fresh + ".";
      } else {
        text += ", further comprising a " + fresh + ".";
      }
      defined.push_back(fresh);
    }
    claims.push_back({rank, std::move(text)});
  }
  return Patent::make(patent_id, std::move(claims));
}

LossFixture synthetic_loss_fixture(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LossFixture fixture;

  auto random_vector = [&](std::size_t dim) {
    std::vector<double> v(dim);
    for (auto& x : v) x = canonical_double(rng) * 2.0 - 1.0;
    return v;
  };

  const std::size_t dim = 16;
  for (int i = 0; i < 8; ++i) {
    const auto anchor = random_vector(dim);
    const auto positive = random_vector(dim);
    const auto negative = random_vector(dim);
    fixture.doc_pairs.push_back(
        {cosine_similarity(anchor, positive), cosine_similarity(anchor, negative)});
  }

  const Relation relations[] = {Relation::cite, Relation::term, Relation::func, Relation::both};
  for (int p = 0; p < 3; ++p) {
    NamedGraph named;
    named.patent_id = "FIX-" + std::to_string(p + 1);
    named.cdg.n = 4 + static_cast<int>(uniform_index(rng, 3));
    for (int dst = 2; dst <= named.cdg.n; ++dst) {
      if (canonical_double(rng) < 0.75) {
        const int src = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(dst - 1)));
        named.cdg.edges.push_back({src, dst, relations[uniform_index(rng, 4)]});
      }
    }
    std::sort(named.cdg.edges.begin(), named.cdg.edges.end());
    named.cdg.edges.erase(std::unique(named.cdg.edges.begin(), named.cdg.edges.end()),
                          named.cdg.edges.end());

    Matrix embeddings(static_cast<std::size_t>(named.cdg.n), dim);
    for (std::size_t r = 0; r < embeddings.rows(); ++r) {
      for (std::size_t c = 0; c < dim; ++c) embeddings(r, c) = canonical_double(rng) * 2.0 - 1.0;
    }
    fixture.patents.push_back(std::move(named));
    fixture.claim_embeddings.push_back(std::move(embeddings));
  }
  return fixture;
}

}  // namespace claimgraph
