#include <doctest.h>

#include <fstream>
#include <sstream>

#include "amlgen/assemble.hpp"
#include "amlgen/error.hpp"
#include "amlgen/pipeline.hpp"
#include "support.hpp"

using namespace amlgen;
namespace fs = std::filesystem;

namespace {

EntityNode acct(const std::string& id) {
  EntityNode n;
  n.node_id = id;
  n.node_type = NodeType::account;
  n.attrs = AccountAttrs{};
  return n;
}

Graph line_graph(std::size_t accounts = 3) {
  Graph g(testing::small_graph(10, 1).window());
  for (std::size_t i = 0; i < accounts; ++i) g.add_node(acct("A" + std::to_string(i)));
  return g;
}

TransactionEdge tx(NodeIndex s, NodeIndex t, Timestamp ts, bool fraud = false) {
  TransactionEdge e;
  e.source = s;
  e.target = t;
  e.timestamp = ts;
  e.amount = Money::from_cents(1000);
  e.is_fraud = fraud;
  return e;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

GenerationResult tiny_run(std::uint64_t seed = 3) {
  GraphConfig g = testing::small_graph(300, 2, seed);
  return generate(g, testing::patterns(1), 1);
}

}  // namespace

TEST_CASE("time since previous transaction") {
  Graph g = line_graph();
  const Timestamp t0 = g.window().start;
  std::vector<PatternInstance> none;
  merge_and_finalize(g, none, {tx(0, 1, t0 + 100), tx(0, 2, t0 + 3700), tx(1, 2, t0 + 50)});
  const auto& e = g.edges();
  REQUIRE(e.size() == 3);
  CHECK(e[0].source == 1);
  CHECK(e[0].time_since_prev == 0);
  CHECK(e[1].source == 0);
  CHECK(e[1].time_since_prev == 0);
  CHECK(e[2].time_since_prev == 3600);
  for (std::size_t i = 0; i < e.size(); ++i) CHECK(e[i].edge_id == i);
}

TEST_CASE("merge keeps instance edge ids pointing at their edges") {
  Graph g = line_graph();
  const Timestamp t0 = g.window().start;
  PatternInstance inst;
  inst.typology = Typology::u_turn;
  PatternTransaction p;
  p.edge = tx(0, 1, t0 + 5000, true);
  p.role = role::hop;
  p.edge.edge_id = g.insert_transaction(p.edge);
  inst.transactions.push_back(p);
  std::vector<PatternInstance> insts{inst};
  merge_and_finalize(g, insts, {tx(1, 2, t0 + 10), tx(2, 0, t0 + 9000)});
  const EdgeId id = insts[0].transactions[0].edge.edge_id;
  CHECK(id == 1);
  CHECK(g.edges()[id].is_fraud);
  CHECK(g.edges()[id].timestamp == t0 + 5000);
}

TEST_CASE("temporal split counts and boundaries") {
  Graph g = line_graph();
  const Timestamp t0 = g.window().start;
  std::vector<TransactionEdge> edges;
  for (int i = 0; i < 10; ++i) edges.push_back(tx(0, 1, t0 + (9 - i) * 100));
  std::vector<PatternInstance> none;
  merge_and_finalize(g, none, std::move(edges));
  const SplitIndex s = temporal_split(g);
  CHECK(s.train == 6);
  CHECK(s.val == 2);
  CHECK(s.test == 2);
  CHECK(s.t1 == t0 + 600);
  CHECK(s.t2 == t0 + 800);
  for (const auto& [id, part] : s.assignment) {
    const Timestamp t = g.edges()[id].timestamp;
    if (part == SplitPart::train) CHECK(t <= s.t1);
    if (part == SplitPart::val) CHECK((t >= s.t1 && t <= s.t2));
    if (part == SplitPart::test) CHECK(t >= s.t2);
  }
}

TEST_CASE("split with equal timestamps falls back to edge order") {
  Graph g = line_graph();
  std::vector<TransactionEdge> edges(10, tx(0, 1, g.window().start + 42));
  std::vector<PatternInstance> none;
  merge_and_finalize(g, none, std::move(edges));
  const SplitIndex s = temporal_split(g);
  CHECK(s.train == 6);
  CHECK(s.val == 2);
  CHECK(s.test == 2);
  for (std::size_t i = 0; i < s.assignment.size(); ++i) {
    CHECK(s.assignment[i].first == i);
    const SplitPart want = i < 6 ? SplitPart::train : i < 8 ? SplitPart::val : SplitPart::test;
    CHECK(s.assignment[i].second == want);
  }
}

TEST_CASE("split ignores ownership edges and rejects tiny graphs") {
  Graph g = line_graph(4);
  g.add_ownership(0, 1);
  std::vector<TransactionEdge> edges(4, tx(2, 3, g.window().start + 1));
  std::vector<PatternInstance> none;
  merge_and_finalize(g, none, std::move(edges));
  CHECK_THROWS_AS(temporal_split(g), TooFewEdges);
}

TEST_CASE("split proportions over random sizes") {
  Rng r(12);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = line_graph();
    const auto n = static_cast<std::size_t>(r.uniform_int(5, 400));
    std::vector<TransactionEdge> edges;
    for (std::size_t i = 0; i < n; ++i) edges.push_back(tx(0, 1, g.window().start + r.uniform_int(0, 50)));
    std::vector<PatternInstance> none;
    merge_and_finalize(g, none, std::move(edges));
    const SplitIndex s = temporal_split(g);
    CHECK(s.train == n * 6 / 10);
    CHECK(s.val == n * 2 / 10);
    CHECK(s.train + s.val + s.test == n);
  }
}

TEST_CASE("export schema has no masked attribute") {
  const GenerationResult r = tiny_run();
  const auto dir = testing::scratch("schema");
  GraphConfig g = testing::small_graph(300, 2, 3);
  write_dataset(r, g, testing::patterns(1), dir);
  std::string want_nodes, want_edges;
  for (auto c : kNodeColumns) want_nodes += (want_nodes.empty() ? "" : ",") + std::string(c);
  for (auto c : kEdgeColumns) want_edges += (want_edges.empty() ? "" : ",") + std::string(c);
  CHECK(first_line(dir / "nodes.csv") == want_nodes);
  CHECK(first_line(dir / "edges.csv") == want_edges);
  CHECK(first_line(dir / "splits.csv") == "edge_id,split");
  for (auto masked : kMaskedAttributes) {
    for (auto c : kNodeColumns) CHECK(c != masked);
    for (auto c : kEdgeColumns) CHECK(c != masked);
  }
  const std::string nodes = slurp(dir / "nodes.csv");
  CHECK(nodes.find(" Bank ") == std::string::npos);
  CHECK(nodes.find("teacher") == std::string::npos);
}

TEST_CASE("export is byte-identical and hashes are recomputable") {
  const GraphConfig g = testing::small_graph(300, 2, 3);
  const auto a = testing::scratch("export_a");
  const auto b = testing::scratch("export_b");
  const ExportManifest ma = write_dataset(tiny_run(), g, testing::patterns(1), a);
  const ExportManifest mb = write_dataset(tiny_run(), g, testing::patterns(1), b);
  CHECK(ma.files == mb.files);
  for (const auto& [name, hash] : ma.files) {
    CHECK(sha256_file(a / name) == hash);
    CHECK(slurp(a / name) == slurp(b / name));
  }
  CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
  CHECK(ma.files.count("patterns.json") == 1);
  for (const auto& entry : fs::directory_iterator(a)) {
    CHECK(entry.path().extension() != ".tmp");
  }
}

TEST_CASE("pattern metadata") {
  const GenerationResult r = tiny_run();
  const auto meta = pattern_metadata(r.graph, r.instances);
  REQUIRE(meta.size() == r.instances.size());
  for (const auto& rec : meta) {
    for (const auto& id : rec.at("edge_ids")) {
      CHECK(r.graph.edges().at(id.get<EdgeId>()).is_fraud);
    }
  }
  const auto dir = testing::scratch("meta");
  const std::string hash = export_pattern_metadata(r.graph, {}, dir / "p.json");
  const auto parsed = nlohmann::json::parse(slurp(dir / "p.json"));
  CHECK(parsed.is_array());
  CHECK(parsed.empty());
  CHECK(hash == sha256_file(dir / "p.json"));
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK_THROWS_AS(sha256_file("/nonexistent/file"), IoError);
}
