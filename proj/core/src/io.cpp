#include "claimgraph/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "claimgraph/errors.hpp"
#include "json.hpp"

namespace claimgraph {

using ordered_json = nlohmann::ordered_json;

namespace {

nlohmann::json parse_json(std::string_view text, const char* what) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw MalformedRecord(std::string("invalid JSON in ") + what);
  }
  return j;
}

}  // namespace

Patent parse_patent_record(std::string_view json_line) {
  const nlohmann::json record = parse_json(json_line, "patent record");
  if (!record.is_object() || !record.contains("patent_id") ||
      !record["patent_id"].is_string()) {
    throw MalformedRecord("patent record lacks a string patent_id");
  }
  const std::string patent_id = record["patent_id"].get<std::string>();

  std::vector<Claim> claims;
  if (record.contains("claims") && record["claims"].is_array()) {
    for (const auto& entry : record["claims"]) {
      if (!entry.is_object() || !entry.contains("num") || !entry.contains("text") ||
          !entry["num"].is_number_integer() || !entry["text"].is_string()) {
        throw MalformedRecord("patent '" + patent_id + "' has a malformed claim entry");
      }
      claims.push_back({entry["num"].get<int>(), entry["text"].get<std::string>()});
    }
  } else if (record.contains("claims_block") && record["claims_block"].is_string()) {
    claims = segment_claims_block(record["claims_block"].get<std::string>());
  } else {
    throw MalformedRecord("patent '" + patent_id + "' has neither claims nor claims_block");
  }
  return Patent::make(patent_id, std::move(claims));
}

std::string graph_to_json(const ClaimDependencyGraph& cdg, const std::string& patent_id) {
  ordered_json j;
  j["patent_id"] = patent_id;
  j["n"] = cdg.n;
  j["edges"] = ordered_json::array();
  for (const auto& e : cdg.edges) {  // already sorted by (src, dst)
    ordered_json edge;
    edge["src"] = e.src;
    edge["dst"] = e.dst;
    edge["rel"] = relation_name(e.rel);
    j["edges"].push_back(std::move(edge));
  }
  return j.dump();
}

NamedGraph graph_from_json(std::string_view json) {
  const nlohmann::json j = parse_json(json, "graph JSON");
  if (!j.is_object() || !j.contains("patent_id") || !j.contains("n") || !j.contains("edges")) {
    throw MalformedRecord("graph JSON lacks patent_id/n/edges");
  }
  NamedGraph named;
  named.patent_id = j["patent_id"].get<std::string>();
  named.cdg.n = j["n"].get<int>();
  for (const auto& edge : j["edges"]) {
    TypedEdge e;
    e.src = edge["src"].get<int>();
    e.dst = edge["dst"].get<int>();
    e.rel = relation_from_name(edge["rel"].get<std::string>());
    if (e.src < 1 || e.src > named.cdg.n || e.dst < 1 || e.dst > named.cdg.n || e.src == e.dst) {
      throw MalformedRecord("graph JSON edge outside claim range");
    }
    named.cdg.edges.push_back(e);
  }
  std::sort(named.cdg.edges.begin(), named.cdg.edges.end());
  return named;
}

std::string graph_to_dot(const ClaimDependencyGraph& cdg, const std::string& patent_id) {
  std::ostringstream out;
  out << "digraph \"" << patent_id << "\" {\n";
  out << "  rankdir=BT;\n";
  for (int rank = 1; rank <= cdg.n; ++rank) {
    out << "  c" << rank << ";\n";
  }
  for (const auto& e : cdg.edges) {
    out << "  c" << e.src << " -> c" << e.dst << " [label=\"" << relation_name(e.rel)
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

void write_header(std::ostream& out, std::size_t length, const char* kind, int layer,
                  double ninf_sentinel) {
  char header[160];
  std::snprintf(header, sizeof(header),
                "{\"L\": %zu, \"kind\": \"%s\", \"layer\": %d, \"ninf_sentinel\": %g}\n",
                length, kind, layer, ninf_sentinel);
  out << header;
}

void write_floats(std::ostream& out, const std::vector<float>& values) {
  // Row-major little-endian float32; this targets little-endian hosts.
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(float)));
}

}  // namespace

void write_mask_binary(std::ostream& out, const MaskMatrix& mask, double ninf_sentinel) {
  const std::size_t length = mask.length();
  write_header(out, length, "mask", 0, ninf_sentinel);
  std::vector<float> values(length * length, 0.0f);
  const auto sentinel = static_cast<float>(ninf_sentinel);
  for (std::size_t u = 0; u < length; ++u) {
    for (std::size_t v = 0; v < length; ++v) {
      if (mask.masked(u, v)) values[u * length + v] = sentinel;
    }
  }
  write_floats(out, values);
}

void write_bias_binary(std::ostream& out, const BiasMatrix& bias, int layer) {
  const std::size_t length = bias.length();
  write_header(out, length, "bias", layer, kDefaultNinfSentinel);
  std::vector<float> values(length * length);
  for (std::size_t u = 0; u < length; ++u) {
    for (std::size_t v = 0; v < length; ++v) {
      values[u * length + v] = static_cast<float>(bias.values(u, v));
    }
  }
  write_floats(out, values);
}

BinaryMatrix read_matrix_binary(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw MalformedRecord("matrix binary lacks a header line");
  const nlohmann::json j = parse_json(header, "matrix binary header");
  BinaryMatrix m;
  m.length = j["L"].get<std::size_t>();
  m.kind = j["kind"].get<std::string>();
  m.layer = j["layer"].get<int>();
  m.ninf_sentinel = j["ninf_sentinel"].get<double>();
  m.values.resize(m.length * m.length);
  in.read(reinterpret_cast<char*>(m.values.data()),
          static_cast<std::streamsize>(m.values.size() * sizeof(float)));
  if (static_cast<std::size_t>(in.gcount()) != m.values.size() * sizeof(float)) {
    throw MalformedRecord("matrix binary payload truncated");
  }
  return m;
}

LossFixture parse_loss_fixture(std::string_view json) {
  const nlohmann::json j = parse_json(json, "loss fixture");
  LossFixture fixture;
  if (j.contains("tau")) fixture.tau = j["tau"].get<double>();
  if (j.contains("tau_c")) fixture.tau_c = j["tau_c"].get<double>();
  if (j.contains("lambda")) fixture.lambda = j["lambda"].get<double>();
  if (fixture.tau <= 0.0 || fixture.tau_c <= 0.0 || fixture.lambda < 0.0) {
    throw MalformedRecord("loss fixture needs tau > 0, tau_c > 0 and lambda >= 0");
  }
  if (j.contains("raw_weights")) {
    const auto& w = j["raw_weights"];
    if (!w.is_array() || w.size() != kNumRelations) {
      throw MalformedRecord("loss fixture raw_weights must hold 4 values");
    }
    for (int r = 0; r < kNumRelations; ++r) {
      fixture.weights.raw[static_cast<std::size_t>(r)] = w[static_cast<std::size_t>(r)].get<double>();
    }
  }

  auto to_vector = [](const nlohmann::json& arr) {
    std::vector<double> v;
    v.reserve(arr.size());
    for (const auto& x : arr) v.push_back(x.get<double>());
    return v;
  };

  if (j.contains("doc_triplets")) {
    for (const auto& trip : j["doc_triplets"]) {
      const auto anchor = to_vector(trip["anchor"]);
      const auto positive = to_vector(trip["positive"]);
      const auto negative = to_vector(trip["negative"]);
      fixture.doc_pairs.push_back({cosine_similarity(anchor, positive),
                                   cosine_similarity(anchor, negative)});
    }
  }
  if (j.contains("doc_pairs")) {
    for (const auto& pair : j["doc_pairs"]) {
      fixture.doc_pairs.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  }

  if (j.contains("patents")) {
    for (const auto& pat : j["patents"]) {
      NamedGraph named;
      named.patent_id = pat.value("patent_id", std::string{});
      named.cdg.n = pat["n"].get<int>();
      for (const auto& edge : pat["edges"]) {
        named.cdg.edges.push_back({edge["src"].get<int>(), edge["dst"].get<int>(),
                                   relation_from_name(edge["rel"].get<std::string>())});
      }
      std::sort(named.cdg.edges.begin(), named.cdg.edges.end());
      const auto& rows = pat["claim_embeddings"];
      if (!rows.is_array() || rows.size() != static_cast<std::size_t>(named.cdg.n)) {
        throw MalformedRecord("loss fixture embeddings do not match claim count");
      }
      const std::size_t dim = rows.empty() ? 0 : rows[0].size();
      Matrix embeddings(rows.size(), dim);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto row = to_vector(rows[r]);
        if (row.size() != dim) throw MalformedRecord("ragged embedding matrix");
        for (std::size_t c = 0; c < dim; ++c) embeddings(r, c) = row[c];
      }
      fixture.patents.push_back(std::move(named));
      fixture.claim_embeddings.push_back(std::move(embeddings));
    }
  }
  return fixture;
}

std::string loss_fixture_to_json(const LossFixture& fixture) {
  ordered_json j;
  j["tau"] = fixture.tau;
  j["tau_c"] = fixture.tau_c;
  j["lambda"] = fixture.lambda;
  j["raw_weights"] = fixture.weights.raw;
  j["doc_pairs"] = ordered_json::array();
  for (const auto& pair : fixture.doc_pairs) {
    j["doc_pairs"].push_back(ordered_json::array({pair.pos, pair.neg}));
  }
  j["patents"] = ordered_json::array();
  for (std::size_t p = 0; p < fixture.patents.size(); ++p) {
    const auto& named = fixture.patents[p];
    ordered_json pat;
    pat["patent_id"] = named.patent_id;
    pat["n"] = named.cdg.n;
    pat["edges"] = ordered_json::array();
    for (const auto& e : named.cdg.edges) {
      ordered_json edge;
      edge["src"] = e.src;
      edge["dst"] = e.dst;
      edge["rel"] = relation_name(e.rel);
      pat["edges"].push_back(std::move(edge));
    }
    const Matrix& embeddings = fixture.claim_embeddings[p];
    pat["claim_embeddings"] = ordered_json::array();
    for (std::size_t r = 0; r < embeddings.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (std::size_t c = 0; c < embeddings.cols(); ++c) row.push_back(embeddings(r, c));
      pat["claim_embeddings"].push_back(std::move(row));
    }
    j["patents"].push_back(std::move(pat));
  }
  return j.dump(2);
}

namespace {

ordered_json summary_json(const MetricSummary& m) {
  ordered_json j;
  j["count"] = m.count;
  if (m.count == 0) return j;
  j["mean"] = m.mean;
  j["std"] = m.stddev;
  j["median"] = m.median;
  j["min"] = m.min;
  j["max"] = m.max;
  return j;
}

}  // namespace

std::string report_to_json(const CorpusReport& report) {
  ordered_json j;
  j["patents"] = report.patents;
  ordered_json metrics;
  metrics["claims_per_patent"] = summary_json(report.claims_per_patent);
  metrics["edges_per_patent"] = summary_json(report.edges_per_patent);
  metrics["density"] = summary_json(report.density);
  metrics["avg_path_length"] = summary_json(report.avg_path_length);
  metrics["diameter"] = summary_json(report.diameter);
  j["metrics"] = std::move(metrics);
  ordered_json relations;
  for (int r = 0; r < kNumRelations; ++r) {
    const auto& rel = report.relations[static_cast<std::size_t>(r)];
    ordered_json entry;
    entry["count"] = rel.count;
    entry["percent"] = rel.percent;
    entry["mean_per_patent"] = rel.mean_per_patent;
    entry["presence_rate"] = rel.presence_rate;
    relations[relation_name(static_cast<Relation>(r))] = std::move(entry);
  }
  j["relations"] = std::move(relations);
  j["total_edges"] = report.total_edges;
  ordered_json boundary;
  boundary["zero_edge"] = report.zero_edge_patents;
  boundary["single_claim"] = report.single_claim_patents;
  boundary["cite_only"] = report.cite_only_patents;
  j["boundary"] = std::move(boundary);
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedRecord("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace claimgraph
