#include "qhc/vartable.hpp"

#include <algorithm>
#include <tuple>

#include "qhc/errors.hpp"

namespace qhc {

std::string_view to_string(VarKind kind) {
  switch (kind) {
    case VarKind::Xi: return "XI";
    case VarKind::U: return "U";
    case VarKind::T: return "T";
    case VarKind::H: return "H";
    case VarKind::Q: return "Q";
    case VarKind::QTilde: return "QTILDE";
    case VarKind::Zeta: return "ZETA";
    case VarKind::X: return "X";
    case VarKind::Y: return "Y";
    case VarKind::Aux: return "AUX";
  }
  return "?";
}

std::shared_ptr<const VarTable> VarTable::make(std::vector<Variable> vars) {
  std::stable_sort(vars.begin(), vars.end(), [](const Variable& a, const Variable& b) {
    return std::tie(a.kind, a.node, a.index) < std::tie(b.kind, b.node, b.index);
  });
  auto table = std::shared_ptr<VarTable>(new VarTable());
  table->vars_ = std::move(vars);
  for (std::size_t i = 0; i < table->vars_.size(); ++i) {
    const auto& name = table->vars_[i].name;
    if (name.empty()) throw ArgumentError("variable without a name");
    if (!table->by_name_.emplace(name, i).second)
      throw ArgumentError("duplicate variable name '" + name + "'");
  }
  return table;
}

std::shared_ptr<const VarTable> VarTable::aux(const std::vector<std::string>& names, bool laurent) {
  std::vector<Variable> vars;
  int i = 0;
  for (const auto& n : names) vars.push_back({VarKind::Aux, 0, i++, laurent, n});
  return make(std::move(vars));
}

std::optional<std::size_t> VarTable::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t VarTable::at(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw ArgumentError("unknown variable '" + std::string(name) + "'");
}

std::vector<std::size_t> VarTable::of_kind(VarKind kind) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].kind == kind) out.push_back(i);
  return out;
}

std::shared_ptr<const VarTable> VarTable::extended(std::vector<Variable> extra) const {
  std::vector<Variable> all = vars_;
  all.insert(all.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
  return make(std::move(all));
}

}  // namespace qhc
