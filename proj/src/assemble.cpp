#include "amlgen/assemble.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <unordered_map>

#include "amlgen/error.hpp"

namespace amlgen {

using nlohmann::json;
namespace fs = std::filesystem;

void recompute_deltas(std::vector<TransactionEdge>& edges) {
  std::unordered_map<NodeIndex, Timestamp> last;
  for (auto& e : edges) {
    if (e.relation != Relation::transaction) {
      e.time_since_prev = 0;
      continue;
    }
    auto [it, first] = last.try_emplace(e.source, e.timestamp);
    e.time_since_prev = first ? 0 : e.timestamp - it->second;
    it->second = e.timestamp;
  }
}

void merge_and_finalize(Graph& graph, std::vector<PatternInstance>& instances,
                        std::vector<TransactionEdge>&& background) {
  graph.append_edges(std::move(background));
  auto& edges = graph.mutable_edges();
  std::sort(edges.begin(), edges.end(), [](const TransactionEdge& a, const TransactionEdge& b) {
    return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.edge_id < b.edge_id;
  });
  std::vector<EdgeId> remap(graph.next_edge_id());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    remap[edges[i].edge_id] = i;
    edges[i].edge_id = i;
  }
  recompute_deltas(edges);
  for (auto& inst : instances) {
    for (auto& tx : inst.transactions) tx.edge = edges[remap[tx.edge.edge_id]];
  }
}

std::string_view to_string(SplitPart p) {
  switch (p) {
    case SplitPart::train: return "train";
    case SplitPart::val: return "val";
    case SplitPart::test: return "test";
  }
  return "?";
}

SplitIndex temporal_split(const Graph& graph, double train_fraction, double val_fraction) {
  std::vector<const TransactionEdge*> tx;
  for (const auto& e : graph.edges()) {
    if (e.relation == Relation::transaction) tx.push_back(&e);
  }
  if (tx.size() < 5) {
    throw TooFewEdges("temporal split needs at least 5 transaction edges, have " +
                      std::to_string(tx.size()));
  }
  std::sort(tx.begin(), tx.end(), [](const TransactionEdge* a, const TransactionEdge* b) {
    return a->timestamp != b->timestamp ? a->timestamp < b->timestamp : a->edge_id < b->edge_id;
  });
  const std::size_t n = tx.size();
  SplitIndex s;
  s.train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
  s.val = static_cast<std::size_t>(std::floor(val_fraction * static_cast<double>(n)));
  s.test = n - s.train - s.val;
  s.assignment.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SplitPart p = i < s.train ? SplitPart::train
                        : i < s.train + s.val ? SplitPart::val
                                              : SplitPart::test;
    s.assignment.emplace_back(tx[i]->edge_id, p);
  }
  s.t1 = tx[s.train]->timestamp;
  s.t2 = tx[std::min(s.train + s.val, n - 1)]->timestamp;
  return s;
}

// ---------------------------------------------------------------------------

namespace {

std::string to_hex(const unsigned char* d, unsigned n) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * n);
  for (unsigned i = 0; i < n; ++i) {
    out.push_back(kHex[d[i] >> 4]);
    out.push_back(kHex[d[i] & 15]);
  }
  return out;
}

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* c) const { EVP_MD_CTX_free(c); }
};

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error("SHA-256 unavailable");
    }
  }
  void update(std::string_view d) { EVP_DigestUpdate(ctx_.get(), d.data(), d.size()); }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned n = 0;
    EVP_DigestFinal_ex(ctx_.get(), md, &n);
    return to_hex(md, n);
  }

 private:
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx_;
};

/// Buffered writer to a temporary file that hashes what it writes and
/// renames into place on commit.
class AtomicWriter {
 public:
  explicit AtomicWriter(fs::path file) : file_(std::move(file)), tmp_(file_) {
    tmp_ += ".tmp";
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw IoError("cannot open " + tmp_.string() + " for writing");
    buf_.reserve(kFlushAt + 4096);
  }
  AtomicWriter(const AtomicWriter&) = delete;
  AtomicWriter& operator=(const AtomicWriter&) = delete;
  ~AtomicWriter() {
    if (!done_) {
      out_.close();
      std::error_code ec;
      fs::remove(tmp_, ec);
    }
  }

  AtomicWriter& operator<<(std::string_view s) {
    buf_.append(s);
    if (buf_.size() >= kFlushAt) flush();
    return *this;
  }
  AtomicWriter& operator<<(std::int64_t v) {
    char tmp[32];
    const int n = std::snprintf(tmp, sizeof tmp, "%lld", static_cast<long long>(v));
    buf_.append(tmp, static_cast<std::size_t>(n));
    return *this;
  }

  std::string commit() {
    flush();
    out_.close();
    if (!out_) throw IoError("failed writing " + tmp_.string());
    std::error_code ec;
    fs::rename(tmp_, file_, ec);
    if (ec) throw IoError("cannot rename " + tmp_.string() + ": " + ec.message());
    done_ = true;
    return hash_.hex();
  }

 private:
  static constexpr std::size_t kFlushAt = 1 << 20;

  void flush() {
    hash_.update(buf_);
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    if (!out_) throw IoError("failed writing " + tmp_.string());
    buf_.clear();
  }

  fs::path file_;
  fs::path tmp_;
  std::ofstream out_;
  std::string buf_;
  Sha256 hash_;
  bool done_ = false;
};

template <std::size_t N>
void header(AtomicWriter& w, const std::array<std::string_view, N>& cols) {
  for (std::size_t i = 0; i < N; ++i) {
    if (i) w << ",";
    w << cols[i];
  }
  w << "\n";
}

std::string write_nodes(const Graph& g, const fs::path& file) {
  AtomicWriter w(file);
  header(w, kNodeColumns);
  for (const auto& n : g.nodes()) {
    w << n.node_id << "," << to_string(n.node_type) << "," << n.country_code << ",";
    if (const auto* a = n.account()) {
      w << to_string(a->account_category) << "," << a->currency << "," << g.id(a->owner) << ","
        << (a->account_category == AccountCategory::cash ? "" : g.id(a->institution)) << ",";
    } else if (const auto* b = n.business()) {
      w << ",," << g.id(b->owner) << ",,";
    } else {
      w << ",,,,";
    }
    if (const auto* i = n.individual()) {
      w << to_string(i->age_group) << "," << i->gender << ",";
    } else {
      w << ",,";
    }
    if (const auto* b = n.business()) {
      w << static_cast<std::int64_t>(b->incorporation_year) << ","
        << static_cast<std::int64_t>(b->number_of_employees) << ",";
    } else {
      w << ",,";
    }
    if (const auto* a = n.account()) w << static_cast<std::int64_t>(a->creation_year);
    w << "," << (n.is_fraudulent ? "1" : "0") << "\n";
  }
  return w.commit();
}

std::string write_edges(const Graph& g, const fs::path& file) {
  AtomicWriter w(file);
  header(w, kEdgeColumns);
  for (const auto& e : g.edges()) {
    const bool tx = e.relation == Relation::transaction;
    w << static_cast<std::int64_t>(e.edge_id) << "," << g.id(e.source) << "," << g.id(e.target)
      << "," << to_string(e.relation) << "," << e.amount.str() << "," << e.timestamp << ","
      << e.time_since_prev << "," << (tx ? to_string(e.category) : "") << ","
      << (e.is_fraud ? "1" : "0") << "\n";
  }
  return w.commit();
}

std::string write_splits(const SplitIndex& s, const fs::path& file) {
  AtomicWriter w(file);
  w << "edge_id,split\n";
  for (const auto& [id, part] : s.assignment) {
    w << static_cast<std::int64_t>(id) << "," << to_string(part) << "\n";
  }
  return w.commit();
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data);
  return h.hex();
}

std::string sha256_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  Sha256 h;
  std::string buf(1 << 16, '\0');
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h.update(std::string_view(buf.data(), static_cast<std::size_t>(in.gcount())));
  }
  return h.hex();
}

void write_file_atomic(const fs::path& file, std::string_view data) {
  AtomicWriter w(file);
  w << data;
  w.commit();
}

json pattern_metadata(const Graph& graph, const std::vector<PatternInstance>& instances) {
  json out = json::array();
  for (const auto& inst : instances) {
    json roles = json::object();
    for (const auto& [name, members] : inst.roles) {
      json ids = json::array();
      for (NodeIndex n : members) ids.push_back(graph.id(n));
      roles[name] = std::move(ids);
    }
    json edge_ids = json::array();
    json txs = json::array();
    for (const auto& tx : inst.transactions) {
      edge_ids.push_back(tx.edge.edge_id);
      json t = {{"edge_id", tx.edge.edge_id}, {"role", tx.role}, {"leg", tx.leg}, {"step", tx.step}};
      if (tx.funds_leg >= 0) t["funds_leg"] = tx.funds_leg;
      txs.push_back(std::move(t));
    }
    out.push_back({{"key", inst.key()},
                   {"typology", std::string(to_string(inst.typology))},
                   {"instance_id", inst.instance_id},
                   {"roles", std::move(roles)},
                   {"edge_ids", std::move(edge_ids)},
                   {"transactions", std::move(txs)},
                   {"params_used", inst.params_used}});
  }
  return out;
}

std::string export_pattern_metadata(const Graph& graph,
                                    const std::vector<PatternInstance>& instances,
                                    const fs::path& file) {
  AtomicWriter w(file);
  w << pattern_metadata(graph, instances).dump(1) << "\n";
  return w.commit();
}

ExportManifest export_dataset(const Graph& graph, const SplitIndex& split,
                              const std::vector<PatternInstance>& instances, const fs::path& dir,
                              const OutputFormats& formats, const ExportContext& ctx) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  ExportManifest m;
  if (formats.csv) {
    m.files["nodes.csv"] = write_nodes(graph, dir / "nodes.csv");
    m.files["edges.csv"] = write_edges(graph, dir / "edges.csv");
    m.files["splits.csv"] = write_splits(split, dir / "splits.csv");
  }
  if (formats.json) {
    m.files["patterns.json"] = export_pattern_metadata(graph, instances, dir / "patterns.json");
  }

  m.json = {{"format_version", 1},
            {"seed", ctx.seed},
            {"config_sha256",
             {{"graph", sha256_hex(ctx.graph_config_yaml)},
              {"patterns", sha256_hex(ctx.pattern_config_yaml)}}},
            {"statistics", ctx.statistics},
            {"split",
             {{"t1", split.t1},
              {"t2", split.t2},
              {"train", split.train},
              {"val", split.val},
              {"test", split.test},
              {"covers", "transaction edges"}}},
            {"files", m.files}};
  write_file_atomic(dir / "manifest.json", m.json.dump(2) + "\n");
  return m;
}

}  // namespace amlgen
