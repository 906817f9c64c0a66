// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned here, in code.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "claimgraph/attention.hpp"
#include "claimgraph/io.hpp"
#include "claimgraph/loss.hpp"
#include "claimgraph/pipeline.hpp"
#include "claimgraph/stats.hpp"
#include "claimgraph/synthetic.hpp"
#include "claimgraph/tokenizer.hpp"
#include "claimgraph/toy_encoder.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace claimgraph;
namespace fs = std::filesystem;

#ifndef CLAIMGRAPH_TEST_DATA_DIR
#error "CLAIMGRAPH_TEST_DATA_DIR must be defined"
#endif
#ifndef CLAIMGRAPH_CLI_PATH
#error "CLAIMGRAPH_CLI_PATH must be defined"
#endif

namespace {

const fs::path kDataDir = CLAIMGRAPH_TEST_DATA_DIR;
const std::string kCli = CLAIMGRAPH_CLI_PATH;
constexpr double kLn2 = 0.6931471805599453;

int g_failures = 0;

struct Criterion {
  std::string details;
  bool ok = true;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      details = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int number, const std::string& name, const Criterion& criterion) {
  if (criterion.ok) {
    std::printf("[PASS] criterion %d: %s%s\n", number, name.c_str(),
                criterion.details.empty() ? "" : (" (" + criterion.details + ")").c_str());
  } else {
    std::printf("[FAIL] criterion %d: %s: %s\n", number, name.c_str(), criterion.details.c_str());
    ++g_failures;
  }
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

double rel_err(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-12});
  return std::fabs(a - b) / scale;
}

// --------------------------------------------------------------------------
// 1. Extraction correctness on the hand-labeled mini-corpus.
// --------------------------------------------------------------------------
void criterion_1() {
  Criterion c;
  const auto start = Clock::now();
  const auto lines = read_lines(kDataDir / "mini_corpus.jsonl");
  c.require(lines.size() == 20, "expected 20 bundled patents");

  std::size_t exact = 0;
  for (const auto& line : lines) {
    const Patent patent = parse_patent_record(line);
    const ClaimDependencyGraph cdg = build_cdg(patent);
    const NamedGraph golden = graph_from_json(
        read_file((kDataDir / "golden" / (patent.patent_id() + ".graph.json")).string()));
    if (cdg.edges == golden.cdg.edges && cdg.n == golden.cdg.n) {
      ++exact;
    } else {
      c.require(false, "edge set mismatch on " + patent.patent_id());
    }
  }
  const double elapsed = seconds_since(start);
  c.require(exact == lines.size(), "not every golden matched");
  c.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + "s exceeds 1s");
  char buf[128];
  std::snprintf(buf, sizeof(buf), "20/20 exact, precision = recall = 1.0, %.3fs", elapsed);
  c.details = c.ok ? buf : c.details;
  report(1, "extraction equals golden labels", c);
}

// --------------------------------------------------------------------------
// 2. Mutual exclusivity and closure dominance over 10,000 fuzzed patents.
// --------------------------------------------------------------------------
void criterion_2() {
  Criterion c;
  const auto start = Clock::now();
  std::mt19937_64 rng(424242);
  std::size_t closure_checked = 0;

  for (int round = 0; round < 10000 && c.ok; ++round) {
    const Patent patent =
        synthetic_patent(rng, "FZ-" + std::to_string(round), {.min_claims = 1, .max_claims = 12});
    const ClaimDependencyGraph cdg = build_cdg(patent);
    const AdjacencySet adj = build_adjacency(cdg);
    const auto n = static_cast<std::size_t>(cdg.n);

    for (std::size_t i = 0; i < n && c.ok; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        int bits = 0;
        for (const auto& m : adj.by_relation) bits += m.at(i, j) ? 1 : 0;
        if (bits > 1) {
          c.require(false, "exclusivity violated in round " + std::to_string(round));
          break;
        }
      }
    }

    std::vector<TypedEdge> cite;
    for (const auto& e : cdg.edges) {
      if (e.rel == Relation::cite) cite.push_back(e);
    }
    const BoolMatrix closure = cite_transitive_closure(cite, cdg.n);
    for (const auto& e : cdg.edges) {
      if (e.rel == Relation::cite) continue;
      if (closure.at(static_cast<std::size_t>(e.src - 1), static_cast<std::size_t>(e.dst - 1))) {
        c.require(false, "implicit edge inside the cite closure in round " + std::to_string(round));
        break;
      }
    }
    if (cdg.n <= 8) {
      ++closure_checked;
      if (!(closure == oracles::floyd_warshall_closure(cite, cdg.n))) {
        c.require(false, "closure oracle mismatch in round " + std::to_string(round));
      }
    }
  }
  const double elapsed = seconds_since(start);
  c.require(elapsed < 30.0, "runtime " + std::to_string(elapsed) + "s exceeds 30s");
  char buf[160];
  std::snprintf(buf, sizeof(buf), "10000 patents, %zu closure-oracle checks, %.2fs",
                closure_checked, elapsed);
  c.details = c.ok ? buf : c.details;
  report(2, "exclusivity and closure dominance under fuzz", c);
}

// --------------------------------------------------------------------------
// 3. Adjacency construction and lossless graph JSON round trips.
// --------------------------------------------------------------------------
void criterion_3() {
  Criterion c;
  std::mt19937_64 rng(515151);
  for (int round = 0; round < 2000 && c.ok; ++round) {
    const Patent patent =
        synthetic_patent(rng, "AD-" + std::to_string(round), {.min_claims = 1, .max_claims = 10});
    const ClaimDependencyGraph cdg = build_cdg(patent);
    const AdjacencySet adj = build_adjacency(cdg);
    const auto n = static_cast<std::size_t>(cdg.n);

    for (std::size_t i = 0; i < n; ++i) {
      c.require(adj.united.at(i, i), "union diagonal not 1");
      for (const auto& m : adj.by_relation) c.require(m.at(i, i), "typed diagonal not 1");
      for (std::size_t j = 0; j < n; ++j) {
        bool any = false;
        for (const auto& m : adj.by_relation) any = any || m.at(i, j);
        c.require(adj.united.at(i, j) == any, "union != elementwise max");
      }
    }

    const std::string json = graph_to_json(cdg, patent.patent_id());
    const NamedGraph back = graph_from_json(json);
    c.require(back.cdg.n == cdg.n && back.cdg.edges == cdg.edges &&
                  back.patent_id == patent.patent_id(),
              "JSON round trip lost information");
    c.require(graph_to_json(back.cdg, back.patent_id) == json, "re-serialization differs");
  }
  c.details = c.ok ? "2000 fuzzed graphs, diagonals/union/round-trip" : c.details;
  report(3, "adjacency construction and JSON round trip", c);
}

// --------------------------------------------------------------------------
// 4. Attention kernel against the naive oracle on 1,000 random instances.
// --------------------------------------------------------------------------
void criterion_4() {
  Criterion c;
  std::mt19937_64 rng(616161);
  for (int round = 0; round < 1000 && c.ok; ++round) {
    const int n_claims = 1 + static_cast<int>(uniform_index(rng, 6));
    const ClaimDependencyGraph cdg = oracles::random_cdg(rng, n_claims);
    const AdjacencySet adj = build_adjacency(cdg);
    TokenClaimMap map = oracles::random_map(rng, n_claims, 4);
    if (map.length() > 32) {
      map.phi.resize(32);
      map.real_len = 32;
    }
    const std::size_t length = map.length();

    const Matrix logits = oracles::random_matrix(rng, length, length, 3.0);
    const MaskMatrix mask = build_connectivity_mask(adj, map);
    BiasParams params = BiasParams::zero_init(1);
    for (int k = 0; k < kBiasKindsPerLayer; ++k) {
      params.raw(0, static_cast<BiasKind>(k)) = canonical_double(rng) - 0.5;
    }
    const BiasMatrix bias = build_relation_bias(adj, map, params, 0);

    const Matrix fast = masked_biased_attention(logits, mask, &bias);
    const Matrix slow = oracles::naive_attention(logits, mask, &bias);

    for (std::size_t u = 0; u < length && c.ok; ++u) {
      c.require(!mask.masked(u, 0) && !mask.masked(0, u), "[CLS] row/column masked");
      double row_sum = 0.0;
      for (std::size_t v = 0; v < length; ++v) {
        if (rel_err(fast(u, v), slow(u, v)) > 1e-12 &&
            std::fabs(fast(u, v) - slow(u, v)) > 1e-12) {
          c.require(false, "oracle mismatch beyond 1e-12");
          break;
        }
        if (mask.masked(u, v)) {
          c.require(fast(u, v) == 0.0, "masked entry not exactly 0");
        }
        row_sum += fast(u, v);
      }
      c.require(std::fabs(row_sum - 1.0) < 1e-6, "row does not sum to 1 within 1e-6");
    }

    // Shift invariance per row.
    Matrix shifted = logits;
    for (std::size_t u = 0; u < length; ++u) {
      for (std::size_t v = 0; v < length; ++v) shifted(u, v) += 11.5;
    }
    const Matrix shifted_attn = masked_biased_attention(shifted, mask, &bias);
    for (std::size_t u = 0; u < length && c.ok; ++u) {
      for (std::size_t v = 0; v < length; ++v) {
        if (std::fabs(shifted_attn(u, v) - fast(u, v)) > 1e-12) {
          c.require(false, "shift invariance violated beyond 1e-12");
          break;
        }
      }
    }
  }
  c.details = c.ok ? "1000 instances, L <= 32, oracle agreement at 1e-12" : c.details;
  report(4, "attention kernel vs naive softmax oracle", c);
}

// --------------------------------------------------------------------------
// 5. Initialization constants: all 120 + 4 softplus(0) = ln 2, and the
// constant bias cancels on the connected support at init.
// --------------------------------------------------------------------------
void criterion_5() {
  Criterion c;
  const BiasParams params = BiasParams::zero_init(24);
  c.require(params.raw_values().size() == 120, "expected 120 bias scalars");
  for (int layer = 0; layer < 24; ++layer) {
    for (int k = 0; k < kBiasKindsPerLayer; ++k) {
      if (std::fabs(params.effective(layer, static_cast<BiasKind>(k)) - kLn2) >= 1e-12) {
        c.require(false, "bias scalar initialization off ln 2");
      }
    }
  }
  const RelationWeights weights;
  for (int r = 0; r < kNumRelations; ++r) {
    if (std::fabs(weights.effective(static_cast<Relation>(r)) - kLn2) >= 1e-12) {
      c.require(false, "relation weight initialization off ln 2");
    }
  }

  // Constant-bias cancellation, measured on the connected non-[CLS] support
  // (the assertable form: the [CLS] column carries bias 0 by definition, so
  // whole-row equality cannot hold).
  std::mt19937_64 rng(717171);
  for (int round = 0; round < 200 && c.ok; ++round) {
    const int n_claims = 2 + static_cast<int>(uniform_index(rng, 5));
    const ClaimDependencyGraph cdg = oracles::random_cdg(rng, n_claims);
    const AdjacencySet adj = build_adjacency(cdg);
    const TokenClaimMap map = oracles::random_map(rng, n_claims, 3);
    const std::size_t length = map.length();
    const Matrix logits = oracles::random_matrix(rng, length, length, 2.0);
    const MaskMatrix mask = build_connectivity_mask(adj, map);
    const BiasMatrix bias = build_relation_bias(adj, map, params, 0);

    const Matrix with = masked_biased_attention(logits, mask, &bias);
    const Matrix without = masked_biased_attention(logits, mask);

    for (std::size_t v = 0; v < length; ++v) {
      if (std::fabs(with(0, v) - without(0, v)) > 1e-12) {
        c.require(false, "[CLS] row changed by zero-initialized bias");
      }
    }
    for (std::size_t u = 1; u < length && c.ok; ++u) {
      double with_mass = 0.0, without_mass = 0.0;
      for (std::size_t v = 1; v < length; ++v) {
        if (!mask.masked(u, v)) {
          with_mass += with(u, v);
          without_mass += without(u, v);
        }
      }
      for (std::size_t v = 1; v < length; ++v) {
        if (mask.masked(u, v)) continue;
        if (std::fabs(with(u, v) / with_mass - without(u, v) / without_mass) > 1e-12) {
          c.require(false, "constant bias failed to cancel on the connected support");
          break;
        }
      }
    }
  }
  c.details = c.ok ? "120 bias scalars + 4 weights at ln 2; cancellation on connected support"
                   : c.details;
  report(5, "initialization constants", c);
}

// --------------------------------------------------------------------------
// 6. Loss formulas.
// --------------------------------------------------------------------------
void criterion_6() {
  Criterion c;
  // Symmetric pair: exactly ln 2.
  const double symmetric = doc_contrastive_loss(std::vector{SimPair{0.42, 0.42}}, 0.05);
  c.require(symmetric == kLn2, "symmetric doc loss is not exactly ln 2");

  // Frozen high-precision value for (0.9, 0.1, tau = 0.05).
  const double skewed = doc_contrastive_loss(std::vector{SimPair{0.9, 0.1}}, 0.05);
  c.require(rel_err(skewed, 1.1253516838717682e-07) < 1e-6,
            "skewed doc loss off the committed oracle value");

  // Uniform-similarity claim loss equals w_r ln(n-1) for n in 2..10.
  RelationWeights weights;
  weights.raw = {0.2, -0.1, 0.4, 0.0};
  for (int n = 2; n <= 10; ++n) {
    Matrix h(static_cast<std::size_t>(n), 2);
    for (int i = 0; i < n; ++i) {
      h(static_cast<std::size_t>(i), 0) = 0.7;
      h(static_cast<std::size_t>(i), 1) = 0.3;
    }
    ClaimDependencyGraph cdg;
    cdg.n = n;
    cdg.edges = {{1, 2, Relation::term}};
    const double loss = claim_contrastive_loss(h, cdg, weights, 0.05);
    if (std::fabs(loss - weights.effective(Relation::term) * std::log(n - 1.0)) >= 1e-12) {
      c.require(false, "uniform-similarity claim loss off w ln(n-1) at n=" + std::to_string(n));
    }
  }

  // Random instances against the per-edge brute-force oracle.
  std::mt19937_64 rng(818181);
  for (int round = 0; round < 500 && c.ok; ++round) {
    const int n = 3 + static_cast<int>(uniform_index(rng, 6));
    const ClaimDependencyGraph cdg = oracles::random_cdg(rng, n);
    if (cdg.edges.empty()) continue;
    const Matrix h = oracles::random_matrix(rng, static_cast<std::size_t>(n), 8);
    RelationWeights w;
    for (auto& raw : w.raw) raw = canonical_double(rng) * 2.0 - 1.0;
    const double fast = claim_contrastive_loss(h, cdg, w, 0.05);
    const double slow = oracles::brute_claim_loss(h, cdg, w, 0.05);
    if (std::fabs(fast - slow) >= 1e-12) {
      c.require(false, "claim loss differs from the brute-force oracle");
    }
  }
  c.details = c.ok ? "ln 2 exact; 1.1253517e-07 at rel 1e-6; w ln(n-1) at 1e-12; 500 oracle runs"
                   : c.details;
  report(6, "loss formulas", c);
}

// --------------------------------------------------------------------------
// 7. Gradient checks: relation weights and the composed toy pipeline.
// --------------------------------------------------------------------------
void criterion_7() {
  Criterion c;
  const auto start = Clock::now();
  std::mt19937_64 rng(919191);

  int checked = 0;
  while (checked < 100) {
    const int n = 4 + static_cast<int>(uniform_index(rng, 5));
    const ClaimDependencyGraph cdg = oracles::random_cdg(rng, n);
    if (cdg.edges.empty()) continue;
    ++checked;
    const Matrix h = oracles::random_matrix(rng, static_cast<std::size_t>(n), 6);
    RelationWeights weights;
    for (auto& raw : weights.raw) raw = canonical_double(rng) * 2.0 - 1.0;

    const auto analytic = weight_gradients(h, cdg, weights, 0.05);
    const auto fd = finite_difference(
        [&](std::span<const double> raw) {
          RelationWeights local;
          for (int r = 0; r < kNumRelations; ++r) {
            local.raw[static_cast<std::size_t>(r)] = raw[static_cast<std::size_t>(r)];
          }
          return claim_contrastive_loss(h, cdg, local, 0.05);
        },
        weights.raw, 1e-5);
    for (int r = 0; r < kNumRelations; ++r) {
      const double a = analytic[static_cast<std::size_t>(r)];
      const double f = fd[static_cast<std::size_t>(r)];
      // Relative 1e-4 plus an absolute floor of 1e-8 for the central
      // difference oracle's own rounding noise (loss-eval epsilon over 2e-5).
      if (std::fabs(a - f) > 1e-8 + 1e-4 * std::max(std::fabs(a), std::fabs(f))) {
        c.require(false, "weight gradient off finite differences beyond rel 1e-4");
      }
    }
  }

  // Composed pipeline: 5 bias scalars -> bias matrix -> attention -> mean
  // pooling -> claim loss, one layer, L <= 16, d <= 8.
  for (int round = 0; round < 20 && c.ok; ++round) {
    ToyEncoder toy;
    ClaimDependencyGraph cdg;
    cdg.n = 5;
    cdg.edges = {{1, 2, Relation::cite},
                 {1, 3, Relation::term},
                 {2, 4, Relation::func},
                 {3, 5, Relation::both}};
    toy.cdg = cdg;
    toy.adjacency = build_adjacency(cdg);
    toy.map = oracles::random_map(rng, 5, 3);
    while (toy.map.length() > 16) toy.map = oracles::random_map(rng, 5, 2);
    const std::size_t length = toy.map.length();
    toy.values = oracles::random_matrix(rng, length, 8);
    toy.logits = oracles::random_matrix(rng, length, length, 1.5);

    BiasParams params = BiasParams::zero_init(1);
    for (int k = 0; k < kBiasKindsPerLayer; ++k) {
      params.raw(0, static_cast<BiasKind>(k)) = canonical_double(rng) - 0.5;
    }
    const auto analytic = toy.bias_gradients(params);
    const auto fd = finite_difference(
        [&](std::span<const double> raw) {
          BiasParams local = params;
          for (int k = 0; k < kBiasKindsPerLayer; ++k) {
            local.raw(0, static_cast<BiasKind>(k)) = raw[static_cast<std::size_t>(k)];
          }
          return toy.loss(local);
        },
        params.raw_values(), 1e-5);
    for (int k = 0; k < kBiasKindsPerLayer; ++k) {
      const double a = analytic[static_cast<std::size_t>(k)];
      const double f = fd[static_cast<std::size_t>(k)];
      if (std::fabs(a - f) > 1e-8 + 1e-3 * std::max(std::fabs(a), std::fabs(f))) {
        c.require(false, "toy pipeline bias gradient beyond rel 1e-3");
      }
    }
  }
  const double elapsed = seconds_since(start);
  c.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + "s exceeds 60s");
  char buf[160];
  std::snprintf(buf, sizeof(buf), "100 weight fixtures at 1e-4, 20 composed runs at 1e-3, %.2fs",
                elapsed);
  c.details = c.ok ? buf : c.details;
  report(7, "gradient checks", c);
}

// --------------------------------------------------------------------------
// 8. Statistics engine: oracle agreement, byte stability, percent closure.
// --------------------------------------------------------------------------
void criterion_8() {
  Criterion c;
  std::mt19937_64 rng(929292);
  for (int round = 0; round < 500 && c.ok; ++round) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 6));
    const ClaimDependencyGraph cdg = oracles::random_cdg(rng, n);
    if (cdg.edges.empty()) continue;
    const auto [avg, diameter] = path_metrics(cdg);
    const auto dist = oracles::floyd_warshall_distances(cdg.edges, n);
    std::vector<int> component(static_cast<std::size_t>(n), -1);
    int best_root = 0;
    std::size_t best_size = 0;
    for (int v = 0; v < n; ++v) {
      if (component[static_cast<std::size_t>(v)] >= 0) continue;
      std::size_t size = 0;
      for (int w = 0; w < n; ++w) {
        if (dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] >= 0) {
          component[static_cast<std::size_t>(w)] = v;
          ++size;
        }
      }
      if (size > best_size) {
        best_size = size;
        best_root = v;
      }
    }
    double total = 0.0;
    int pairs = 0, oracle_diameter = 0;
    for (int v = 0; v < n; ++v) {
      for (int w = 0; w < n; ++w) {
        if (v != w && component[static_cast<std::size_t>(v)] == best_root &&
            component[static_cast<std::size_t>(w)] == best_root) {
          total += dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
          ++pairs;
          oracle_diameter =
              std::max(oracle_diameter, dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]);
        }
      }
    }
    if (pairs == 0 || std::fabs(avg - total / pairs) > 1e-12 || diameter != oracle_diameter) {
      c.require(false, "path metrics differ from the Floyd-Warshall oracle");
    }
  }

  // Byte stability across runs and worker counts via the CLI.
  const std::string input = (kDataDir / "mini_corpus.jsonl").string();
  const fs::path dir = fs::temp_directory_path() / "cg_acceptance_stats";
  fs::create_directories(dir);
  auto run_stats = [&](int workers, const fs::path& out) {
    const std::string command = kCli + " stats --input " + input + " --workers " +
                                std::to_string(workers) + " --out " + out.string() +
                                " > " + (out.string() + ".stdout") + " 2>/dev/null";
    return std::system(command.c_str()) == 0;
  };
  const fs::path r1 = dir / "w1.json";
  const fs::path r1b = dir / "w1b.json";
  const fs::path r4 = dir / "w4.json";
  c.require(run_stats(1, r1) && run_stats(1, r1b) && run_stats(4, r4), "stats CLI run failed");
  if (c.ok) {
    const std::string a = read_file(r1.string());
    c.require(a == read_file(r1b.string()), "stats report differs across runs");
    c.require(a == read_file(r4.string()), "stats report differs across worker counts");
    c.require(read_file(r1.string() + ".stdout") == read_file(r4.string() + ".stdout"),
              "stats table differs across worker counts");

    double percent_sum = 0.0;
    const auto report_json = nlohmann::json::parse(a);
    for (const auto& rel : report_json["relations"]) percent_sum += rel["percent"].get<double>();
    c.require(std::fabs(percent_sum - 100.0) <= 0.1, "relation percentages do not close to 100");
  }
  c.details = c.ok ? "oracle-exact paths; byte-stable across runs and workers {1,4}" : c.details;
  report(8, "statistics engine", c);
}

// --------------------------------------------------------------------------
// 9. Throughput and empirical O(L^2) scaling.
// --------------------------------------------------------------------------
void criterion_9() {
  Criterion c;
  std::mt19937_64 rng(939393);

  // 1,000 synthetic patents with mean 17 claims: full CDG plus mask and one
  // bias layer, single-threaded.
  std::vector<Patent> patents;
  patents.reserve(1000);
  double claim_total = 0.0;
  for (int i = 0; i < 1000; ++i) {
    patents.push_back(
        synthetic_patent(rng, "TP-" + std::to_string(i), {.min_claims = 12, .max_claims = 22}));
    claim_total += patents.back().claim_count();
  }
  const BiasParams params = BiasParams::zero_init(1);

  const auto start = Clock::now();
  std::size_t mask_cells = 0;
  for (const auto& patent : patents) {
    const ClaimDependencyGraph cdg = build_cdg(patent);
    const AdjacencySet adj = build_adjacency(cdg);
    const TokenizedPatent tokenized = tokenize_and_map(patent, 512);
    const MaskMatrix mask = build_connectivity_mask(adj, tokenized.map);
    const BiasMatrix bias = build_relation_bias(adj, tokenized.map, params, 0);
    mask_cells += mask.length() * mask.length() + bias.length() * bias.length();
  }
  const double elapsed = seconds_since(start);
  c.require(elapsed < 10.0, "pipeline took " + std::to_string(elapsed) + "s, budget 10s");

  // Empirical O(L^2): mask+bias construction at L vs 2L, identical claim
  // structure, token counts doubled. Median of 7 trials each.
  const Patent subject =
      synthetic_patent(rng, "SCALE", {.min_claims = 16, .max_claims = 16});
  const ClaimDependencyGraph cdg = build_cdg(subject);
  const AdjacencySet adj = build_adjacency(cdg);

  auto scaled_map = [&](std::size_t tokens_per_claim) {
    TokenClaimMap map;
    map.n_claims = cdg.n;
    map.phi.push_back(TokenClaimMap::kSentinel);
    for (int claim = 1; claim <= cdg.n; ++claim) {
      for (std::size_t t = 0; t < tokens_per_claim; ++t) map.phi.push_back(claim);
    }
    map.real_len = map.phi.size();
    return map;
  };
  std::size_t sink = 0;
  auto build_once = [&](const TokenClaimMap& map) {
    const auto t0 = Clock::now();
    const MaskMatrix mask = build_connectivity_mask(adj, map);
    const BiasMatrix bias = build_relation_bias(adj, map, params, 0);
    const double elapsed = seconds_since(t0);
    sink += mask.masked(1, 1) ? 1 : 0;
    sink += bias.values(1, 1) > 0.0 ? 1 : 0;
    return elapsed;
  };
  const TokenClaimMap small = scaled_map(16);   // L = 257
  const TokenClaimMap large = scaled_map(32);   // L = 513
  // Warm up both sizes, then time back-to-back pairs: each pair shares the
  // machine state of the moment, so the median of per-pair ratios is robust
  // against interference that a lone slow trial would smear into the totals.
  build_once(small);
  build_once(large);
  std::vector<double> ratios;
  for (int trial = 0; trial < 25; ++trial) {
    const double t_small = build_once(small);
    const double t_large = build_once(large);
    ratios.push_back(t_large / t_small);
  }
  std::sort(ratios.begin(), ratios.end());
  const double ratio = ratios[ratios.size() / 2];
  c.require(sink > 0, "builders produced empty matrices");
  c.require(ratio <= 4.5, "doubling L scaled time by " + std::to_string(ratio) + "x > 4.5x");

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "1000 patents (mean %.1f claims) in %.2fs; 2x L cost ratio %.2fx, %zu cells",
                claim_total / 1000.0, elapsed, ratio, mask_cells);
  c.details = c.ok ? buf : c.details;
  report(9, "throughput and O(L^2) scaling", c);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
