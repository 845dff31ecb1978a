#include "qhc/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qhc/errors.hpp"

namespace qhc {

using nlohmann::json;

namespace {

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

bool id_less(const std::string& a, const std::string& b) {
  if (is_integer(a) && is_integer(b)) {
    long long x = std::stoll(a), y = std::stoll(b);
    if (x != y) return x < y;
  }
  return a < b;
}

Quiver::Quiver(std::vector<Node> nodes, std::vector<Edge> edges) {
  std::stable_sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
    if (a.kind != b.kind) return a.kind == NodeKind::Gauge;
    return id_less(a.id, b.id);
  });
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& v = nodes[i];
    if (v.id.empty()) throw QuiverError("node with empty id");
    if (!label_.emplace(v.id, i).second) throw QuiverError("duplicate node id '" + v.id + "'");
    if (v.dim < 1) throw QuiverError("node '" + v.id + "' has dimension " + std::to_string(v.dim) + " (must be >= 1)");
    if (v.kind == NodeKind::Gauge) {
      ++n_gauge_;
      if (v.theta == 0) throw QuiverError("gauge node '" + v.id + "' needs a nonzero theta");
    } else if (v.theta != 0) {
      throw QuiverError("frozen node '" + v.id + "' must not carry theta");
    }
  }
  nodes_ = std::move(nodes);

  std::map<std::pair<std::size_t, std::size_t>, int> merged;
  for (const auto& e : edges) {
    auto s = label_.find(e.src), t = label_.find(e.dst);
    if (s == label_.end()) throw QuiverError("edge source '" + e.src + "' is not a node");
    if (t == label_.end()) throw QuiverError("edge target '" + e.dst + "' is not a node");
    if (e.count < 1) throw QuiverError("edge " + e.src + "->" + e.dst + " has non-positive count");
    if (s->second == t->second) throw QuiverError("self loop at node '" + e.src + "'");
    merged[{s->second, t->second}] += e.count;
  }
  for (const auto& [st, c] : merged) {
    if (merged.count({st.second, st.first}))
      throw QuiverError("oriented 2-cycle between '" + nodes_[st.first].id + "' and '" + nodes_[st.second].id + "'");
    edges_.push_back({nodes_[st.first].id, nodes_[st.second].id, c});
  }
}

std::size_t Quiver::label(const std::string& id) const {
  auto it = label_.find(id);
  if (it == label_.end()) throw ArgumentError("unknown node '" + id + "'");
  return it->second;
}

int Quiver::v_minus(const std::string& id) const {
  int s = 0;
  for (const auto& e : edges_)
    if (e.dst == id) s += e.count * node(e.src).dim;
  return s;
}

int Quiver::v_plus(const std::string& id) const {
  int s = 0;
  for (const auto& e : edges_)
    if (e.src == id) s += e.count * node(e.dst).dim;
  return s;
}

Quiver Quiver::with_theta(const std::map<std::string, int>& theta) const {
  std::vector<Node> ns = nodes_;
  for (auto& v : ns) {
    auto it = theta.find(v.id);
    if (it != theta.end()) v.theta = it->second;
  }
  return Quiver(std::move(ns), edges_);
}

Quiver Quiver::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  auto id_of = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw InputError("node ids must be strings");
  };
  try {
    if (!j.is_object() || !j.contains("nodes")) throw InputError("quiver file needs a \"nodes\" array");
    std::vector<Node> nodes;
    for (const auto& n : j.at("nodes")) {
      Node v;
      v.id = id_of(n.at("id"));
      std::string kind = n.value("kind", "gauge");
      if (kind == "gauge") v.kind = NodeKind::Gauge;
      else if (kind == "frozen") v.kind = NodeKind::Frozen;
      else throw InputError("node '" + v.id + "': kind must be gauge or frozen");
      v.dim = n.at("dim").get<int>();
      if (n.contains("theta")) v.theta = n.at("theta").get<int>();
      nodes.push_back(std::move(v));
    }
    std::vector<Edge> edges;
    if (j.contains("edges"))
      for (const auto& e : j.at("edges"))
        edges.push_back({id_of(e.at("src")), id_of(e.at("dst")), e.value("count", 1)});
    return Quiver(std::move(nodes), std::move(edges));
  } catch (const json::exception& e) {
    throw InputError(std::string("bad quiver file: ") + e.what());
  }
}

Quiver Quiver::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string Quiver::to_json() const {
  json j;
  j["nodes"] = json::array();
  for (const auto& v : nodes_) {
    json n{{"id", v.id}, {"kind", v.kind == NodeKind::Gauge ? "gauge" : "frozen"}, {"dim", v.dim}};
    if (v.kind == NodeKind::Gauge) n["theta"] = v.theta;
    j["nodes"].push_back(n);
  }
  j["edges"] = json::array();
  for (const auto& e : edges_) j["edges"].push_back({{"src", e.src}, {"dst", e.dst}, {"count", e.count}});
  return j.dump();
}

ValidationReport validate(const Quiver& q) {
  ValidationReport r;
  const auto& nodes = q.nodes();
  const std::size_t N = nodes.size();

  std::vector<std::vector<std::size_t>> out(N);
  std::vector<int> indeg(N, 0);
  for (const auto& e : q.edges()) {
    out[q.label(e.src)].push_back(q.label(e.dst));
    ++indeg[q.label(e.dst)];
  }
  // Kahn's algorithm.
  std::vector<int> deg = indeg;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < N; ++i)
    if (deg[i] == 0) stack.push_back(i);
  std::size_t seen = 0;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    ++seen;
    for (std::size_t j : out[i])
      if (--deg[j] == 0) stack.push_back(j);
  }
  r.acyclic = seen == N;
  if (!r.acyclic) r.notes.push_back("quiver has an oriented cycle");

  r.dims_feasible = true;
  bool all_positive = true, fano = true;
  for (const auto& v : nodes) {
    if (v.kind != NodeKind::Gauge) continue;
    NodeFeasibility f{v.id, v.dim, q.v_minus(v.id), q.v_plus(v.id), v.theta, false};
    f.ok = v.theta > 0 ? f.v_minus >= f.v : f.v_plus >= f.v;
    if (!f.ok) {
      r.dims_feasible = false;
      r.notes.push_back("node " + v.id + ": " + (v.theta > 0 ? "v^- < v" : "v^+ < v") + ", stable locus empty");
    }
    if (v.theta <= 0) all_positive = false;
    if (f.v_minus - f.v_plus < 2) fano = false;
    r.feasibility.push_back(f);
  }

  std::vector<std::size_t> sources;
  for (std::size_t i = 0; i < N; ++i)
    if (indeg[i] == 0) sources.push_back(i);
  bool single_frozen_source =
      q.n_frozen() == 1 && sources.size() == 1 && nodes[sources[0]].kind == NodeKind::Frozen;
  r.quiver_flag = r.acyclic && single_frozen_source && all_positive && fano;

  // Type A chain [v0] -> (v1) -> ... -> (vn), single arrows.
  r.type_a = false;
  if (q.n_frozen() == 1 && q.n_gauge() >= 1 && q.edges().size() == q.n_gauge() && all_positive) {
    std::vector<std::string> chain{nodes[q.n_gauge()].id};
    bool ok = true;
    while (ok && chain.size() <= q.n_gauge()) {
      const std::string& cur = chain.back();
      std::vector<const Edge*> nxt;
      for (const auto& e : q.edges())
        if (e.src == cur) nxt.push_back(&e);
      if (nxt.size() != 1 || nxt[0]->count != 1 || !q.is_gauge(nxt[0]->dst)) ok = false;
      else chain.push_back(nxt[0]->dst);
    }
    if (ok && chain.size() == q.n_gauge() + 1) {
      std::vector<int> v;
      for (const auto& id : chain) v.push_back(q.node(id).dim);
      const int n = static_cast<int>(q.n_gauge());
      auto vk = [&](int k) { return k <= n ? v[static_cast<std::size_t>(k)] : 0; };
      for (int k = 0; k <= n - 1 && ok; ++k) {
        if (!(vk(k) > vk(k + 1))) ok = false;
        if (!(vk(0) - vk(k) < vk(k + 1) - vk(k + 2))) ok = false;
      }
      if (ok) {
        r.type_a = true;
        r.chain = chain;
      }
    }
  }
  return r;
}

BMatrices b_matrix(const Quiver& q) {
  const std::size_t n = q.n_gauge(), N = q.nodes().size();
  BMatrices m;
  m.Btilde.assign(N, std::vector<int>(n, 0));
  for (const auto& e : q.edges()) {
    std::size_t i = q.label(e.src), j = q.label(e.dst);
    if (j < n) m.Btilde[i][j] += e.count;
    if (i < n) m.Btilde[j][i] -= e.count;
  }
  m.B.assign(m.Btilde.begin(), m.Btilde.begin() + static_cast<long>(n));
  return m;
}

std::string xi_name(const std::string& id, int j) { return "xi[" + id + "][" + std::to_string(j) + "]"; }
std::string u_name(const std::string& id, int j) { return "u[" + id + "][" + std::to_string(j) + "]"; }
std::string q_name(const std::string& id) { return "Q[" + id + "]"; }
std::string qt_name(const std::string& id, int j) { return "Qt[" + id + "][" + std::to_string(j) + "]"; }
std::string zeta_name(const std::string& id) { return "zeta[" + id + "]"; }

VarTablePtr make_context(const Quiver& q, const ContextOptions& opt) {
  std::vector<Variable> vars;
  for (std::size_t l = 0; l < q.nodes().size(); ++l) {
    const Node& v = q.nodes()[l];
    const int key = static_cast<int>(l) + 1;
    bool gauge = v.kind == NodeKind::Gauge;
    for (int j = 1; j <= v.dim; ++j) {
      if (gauge) vars.push_back({VarKind::Xi, key, j, false, xi_name(v.id, j)});
      else vars.push_back({VarKind::U, key, j, false, u_name(v.id, j)});
    }
    if (gauge) {
      vars.push_back({VarKind::Q, key, 0, true, q_name(v.id)});
      if (opt.with_qtilde)
        for (int j = 1; j <= v.dim; ++j) vars.push_back({VarKind::QTilde, key, j, true, qt_name(v.id, j)});
    }
    if (opt.with_zeta) vars.push_back({VarKind::Zeta, key, 0, true, zeta_name(v.id)});
  }
  if (opt.with_t) vars.push_back({VarKind::T, 0, 0, false, "t"});
  if (opt.with_h) vars.push_back({VarKind::H, 0, 0, false, "h"});
  return VarTable::make(std::move(vars));
}

const NodeWeights& WeightData::at(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return n;
  throw ArgumentError("no weight data for node '" + id + "'");
}

std::vector<MultiPoly> roots(const Quiver& q, const VarTablePtr& ctx, const std::string& id) {
  const Node& v = q.node(id);
  std::vector<MultiPoly> r;
  for (int j = 1; j <= v.dim; ++j)
    r.push_back(MultiPoly::var(ctx, v.kind == NodeKind::Gauge ? xi_name(id, j) : u_name(id, j)));
  return r;
}

WeightData weights(const Quiver& q, const VarTablePtr& ctx) {
  WeightData w;
  w.ctx = ctx;
  for (const auto& e : q.edges()) {
    auto rs = roots(q, ctx, e.src), rt = roots(q, ctx, e.dst);
    for (int c = 0; c < e.count; ++c)
      for (const auto& a : rs)
        for (const auto& b : rt) w.n_weights.push_back(b - a);
  }
  for (std::size_t l = 0; l < q.n_gauge(); ++l) {
    const std::string& id = q.nodes()[l].id;
    NodeWeights nw{id, {}, {}};
    for (const auto& e : q.edges()) {
      for (int c = 0; c < e.count; ++c) {
        if (e.dst == id)
          for (auto& r : roots(q, ctx, e.src)) nw.vminus.push_back(std::move(r));
        if (e.src == id)
          for (auto& r : roots(q, ctx, e.dst)) nw.vplus.push_back(std::move(r));
      }
    }
    w.nodes.push_back(std::move(nw));
  }
  return w;
}

BlockStructure blocks_of(const Quiver& q, const VarTablePtr& ctx) {
  BlockStructure b;
  for (std::size_t l = 0; l < q.n_gauge(); ++l) {
    const Node& v = q.nodes()[l];
    Block blk{v.id, {}};
    for (int j = 1; j <= v.dim; ++j) blk.vars.push_back(ctx->at(xi_name(v.id, j)));
    b.blocks.push_back(std::move(blk));
  }
  return b;
}

Cocharacter unit_cocharacter(const Quiver& q, const VarTablePtr& ctx, const std::string& id, int sign) {
  if (!q.is_gauge(id)) throw ArgumentError("cocharacters live on gauge nodes");
  Cocharacter d(ctx->size(), 0);
  d[ctx->at(xi_name(id, 1))] = sign;
  return d;
}

}  // namespace qhc
