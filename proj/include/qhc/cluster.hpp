// Cluster algebras of geometric type: seeds, mutation, enumeration,
// F-polynomials and g-vectors.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qhc/quiver.hpp"

namespace qhc {

// Element of a tropical semifield: an exponent vector over its generators.
struct TropMonomial {
  std::vector<int> exps;

  friend TropMonomial operator*(const TropMonomial& a, const TropMonomial& b);
  friend TropMonomial oplus(const TropMonomial& a, const TropMonomial& b);  // componentwise min
  TropMonomial inverse() const;
  TropMonomial pow(int e) const;
  bool operator==(const TropMonomial& o) const { return exps == o.exps; }
};

using MutationPath = std::vector<int>;  // directions in 1..n

struct Seed {
  VarTablePtr ctx;
  std::size_t n = 0;
  std::vector<MultiPoly> cluster;      // n Laurent polynomials in the initial variables
  std::vector<TropMonomial> coeffs;    // y_1..y_n over the frozen generators
  IntMatrix Btilde;                    // (n + m) x n
  std::vector<std::size_t> initial;    // table indices of x_1..x_n
  std::vector<std::size_t> frozen;     // table indices of x_{n+1}..x_{n+m}

  std::size_t m() const { return frozen.size(); }
  bool operator==(const Seed& o) const;
};

// Initial seed of a quiver: x[<id>] for every node, frozen ones non-Laurent.
Seed quiver_seed(const Quiver& q);
// From an exchange matrix; variables x[1..n], frozen x[n+1..n+m].
Seed matrix_seed(const IntMatrix& Btilde, std::size_t n);
// Principal coefficients [B; I]; frozen variables are y[1..n].
Seed principal_seed(const IntMatrix& B);

// Throws LaurentError when the exchange quotient is not a Laurent polynomial,
// InternalError when the coefficient and matrix rules disagree.
Seed mutate(const Seed& s, int k);
Seed mutate_path(const Seed& s, const MutationPath& path);

IntMatrix mutate_matrix(const IntMatrix& Btilde, std::size_t n, int k);

// Numerator coefficients polynomial in frozen variables, negative exponents
// only on the initial mutable variables.
bool is_strong_laurent(const Seed& s, const MultiPoly& x);

struct ClusterVariableRecord {
  MultiPoly value;
  MutationPath path;  // first path (BFS order) reaching a seed containing it
  int index = 0;      // its position k in that seed, 1-based
};

struct ClusterEnumeration {
  std::vector<ClusterVariableRecord> variables;  // sorted by canonical text
  std::size_t seeds = 0;                         // distinct unlabeled seeds visited
  int depth_reached = 0;
  bool laurent_ok = true;
  bool involution_ok = true;  // only meaningful when checked
};

struct EnumerationOptions {
  int max_depth = 6;
  std::size_t max_seeds = 200000;
  bool check_involution = false;
  bool parallel = true;
};

ClusterEnumeration cluster_variables(const Seed& s0, const EnumerationOptions& opt);

struct FG {
  MultiPoly F;
  std::vector<int> g;
};

// Principal-coefficient seed only.
FG f_polynomial_and_g_vector(const Seed& s0, const MutationPath& path, int k);
// Degree under deg x_i = e_i, deg y_j = -b_j; throws InternalError if inhomogeneous.
std::vector<int> g_degree(const Seed& s0, const MultiPoly& x);
bool separation_check(const Seed& s0, const MutationPath& path, int k);

std::string format_path(const MutationPath& p);
MutationPath parse_path(const std::string& text);

}  // namespace qhc
