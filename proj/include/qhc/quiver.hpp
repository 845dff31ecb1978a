// Quiver data, validation predicates and derived weight data.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhc/poly.hpp"
#include "qhc/symfun.hpp"

namespace qhc {

enum class NodeKind { Gauge, Frozen };

struct Node {
  std::string id;
  NodeKind kind = NodeKind::Gauge;
  int dim = 1;
  int theta = 0;  // gauge nodes only
};

struct Edge {
  std::string src;
  std::string dst;
  int count = 1;
};

using IntMatrix = std::vector<std::vector<int>>;

class Quiver {
 public:
  // Structural checks (ids, self loops, oriented 2-cycles, dims, theta) throw QuiverError.
  Quiver(std::vector<Node> nodes, std::vector<Edge> edges);

  // JSON text / file; syntax errors throw InputError with the byte position.
  static Quiver from_json(std::string_view text);
  static Quiver load(const std::string& path);
  std::string to_json() const;

  // Gauge nodes first (labels 1..n), then frozen (n+1..n+m); ids numeric-aware sorted.
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t n_gauge() const { return n_gauge_; }
  std::size_t n_frozen() const { return nodes_.size() - n_gauge_; }
  std::size_t label(const std::string& id) const;  // 0-based position in nodes()
  const Node& node(const std::string& id) const { return nodes_[label(id)]; }
  bool is_gauge(const std::string& id) const { return node(id).kind == NodeKind::Gauge; }

  // v_k^- and v_k^+ (incoming / outgoing dimension counts).
  int v_minus(const std::string& id) const;
  int v_plus(const std::string& id) const;

  Quiver with_theta(const std::map<std::string, int>& theta) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::size_t n_gauge_ = 0;
  std::map<std::string, std::size_t> label_;
};

// Sort key: numeric when both ids are integers, else lexicographic.
bool id_less(const std::string& a, const std::string& b);

struct NodeFeasibility {
  std::string id;
  int v = 0, v_minus = 0, v_plus = 0, theta = 0;
  bool ok = false;
};

struct ValidationReport {
  bool acyclic = false;
  std::vector<NodeFeasibility> feasibility;
  bool dims_feasible = false;
  bool quiver_flag = false;
  bool type_a = false;
  std::vector<std::string> chain;  // frozen source followed by the gauge chain, when type_a
  std::vector<std::string> notes;
};

ValidationReport validate(const Quiver& q);

// B: n x n over gauge nodes; Btilde: (n+m) x n. Entries b_ij = #(i->j) - #(j->i).
struct BMatrices {
  IntMatrix B;
  IntMatrix Btilde;
};
BMatrices b_matrix(const Quiver& q);

// Variable naming for a quiver context.
std::string xi_name(const std::string& id, int j);
std::string u_name(const std::string& id, int j);
std::string q_name(const std::string& id);
std::string qt_name(const std::string& id, int j);
std::string zeta_name(const std::string& id);

struct ContextOptions {
  bool with_t = true;
  bool with_h = false;
  bool with_qtilde = false;
  bool with_zeta = false;
};

// Table with XI roots of gauge nodes, U roots of frozen nodes, and the
// requested extras. Q, QTILDE and ZETA are Laurent.
VarTablePtr make_context(const Quiver& q, const ContextOptions& opt);

struct NodeWeights {
  std::string id;
  std::vector<MultiPoly> vminus;  // mu: Chern roots of V^-
  std::vector<MultiPoly> vplus;   // nu: Chern roots of V^+
};

struct WeightData {
  VarTablePtr ctx;
  std::vector<MultiPoly> n_weights;  // target root minus source root
  std::vector<NodeWeights> nodes;    // gauge nodes, in label order
  const NodeWeights& at(const std::string& id) const;
};

// Chern roots of a node: XI variables (gauge) or U variables (frozen).
std::vector<MultiPoly> roots(const Quiver& q, const VarTablePtr& ctx, const std::string& id);

WeightData weights(const Quiver& q, const VarTablePtr& ctx);

BlockStructure blocks_of(const Quiver& q, const VarTablePtr& ctx);

// d = e_1 of the given gauge node scaled by `sign`.
Cocharacter unit_cocharacter(const Quiver& q, const VarTablePtr& ctx, const std::string& id, int sign = 1);

}  // namespace qhc
