// Shared helpers for the unit tests.
#pragma once

#include <random>
#include <string>

#include "qhc/ifunction.hpp"
#include "qhc/psi.hpp"

namespace qt {

inline std::string data(const std::string& name) { return std::string(QHC_DATA_DIR) + "/" + name; }
inline std::string golden(const std::string& name) { return std::string(QHC_GOLDEN_DIR) + "/" + name; }

inline qhc::Quiver chain(int v0, const std::vector<int>& dims, const std::vector<int>& theta = {}) {
  std::vector<qhc::Node> nodes{{"0", qhc::NodeKind::Frozen, v0, 0}};
  std::vector<qhc::Edge> edges;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    nodes.push_back({std::to_string(i + 1), qhc::NodeKind::Gauge, dims[i], theta.empty() ? 1 : theta[i]});
    edges.push_back({std::to_string(i), std::to_string(i + 1), 1});
  }
  return qhc::Quiver(nodes, edges);
}

inline qhc::MultiPoly random_poly(const qhc::VarTablePtr& ctx, std::mt19937& rng, int terms, int maxdeg,
                                  int mincoef = -5, int maxcoef = 5) {
  std::uniform_int_distribution<int> e(0, maxdeg), c(mincoef, maxcoef);
  std::vector<qhc::Term> ts;
  for (int i = 0; i < terms; ++i) {
    qhc::Exponents x(ctx->size());
    for (auto& v : x) v = e(rng);
    ts.push_back({x, c(rng)});
  }
  return qhc::MultiPoly::from_terms(ctx, ts);
}

}  // namespace qt
