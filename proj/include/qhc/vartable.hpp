// Variable tables: the fixed, ordered set of symbols a polynomial lives over.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qhc {

// Declaration order is the canonical class order, highest first.
enum class VarKind : std::uint8_t { Xi, U, T, H, Q, QTilde, Zeta, X, Y, Aux };

std::string_view to_string(VarKind kind);

struct Variable {
  VarKind kind = VarKind::Aux;
  int node = 0;   // sort key of the owning node (gauge 1..n, frozen n+1..)
  int index = 0;  // inner index (Chern root number), 0 when unused
  bool laurent = false;
  std::string name;
};

class VarTable {
 public:
  // Sorts by (kind, node, index); names must be unique.
  static std::shared_ptr<const VarTable> make(std::vector<Variable> vars);

  // Convenience for tests and scratch rings: Aux variables in the given order.
  static std::shared_ptr<const VarTable> aux(const std::vector<std::string>& names,
                                             bool laurent = false);

  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<Variable>& vars() const { return vars_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t at(std::string_view name) const;  // throws ArgumentError

  std::vector<std::size_t> of_kind(VarKind kind) const;

  // Same variables, with the given variables appended (sorted into place).
  std::shared_ptr<const VarTable> extended(std::vector<Variable> extra) const;

 private:
  VarTable() = default;
  std::vector<Variable> vars_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

}  // namespace qhc
