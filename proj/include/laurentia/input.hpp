#pragma once

#include "laurentia/strat.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace laurentia {

/// Malformed or invalid input; line and column are 1-based (0 when unknown).
struct InputError : std::runtime_error {
  InputError(const std::string& what, int line = 0, int column = 0);
  int line, column;
};

/// Declarative problem description: algebra, order, optional involution and run parameters.
///
/// Quiver paths are written `a*b` = traverse a, then b. Table products list
/// `x*y` with the usual algebra convention (apply y first).
struct Problem {
  std::variant<QuiverPresentation, TableAlgebra> algebra;
  std::vector<std::string> labels;  // order labels; the class names when empty
  std::vector<std::pair<std::string, std::string>> covers;  // (smaller, larger)

  bool has_involution = false;
  std::map<std::string, std::string> inv_arrows, inv_vertices;  // quiver mode
  std::vector<SparseVec> inv_table;                               // table mode: image of each basis element

  int window = 8;
  int characteristic = 0;
  std::string cls = "polynomial";

  bool quiver() const { return std::holds_alternative<QuiverPresentation>(algebra); }
};

Problem parse_problem(const std::string& text, const std::string& source = "input");
Problem load_problem(const std::string& path);
/// Canonical TOML rendering; parse_problem(to_toml(p)) reproduces p.
std::string to_toml(const Problem& p);

struct Built {
  AlgebraPtr algebra;
  OrderSpec order;
  std::optional<Involution> tau;
};

/// Builds the algebra (with p.window and p.characteristic), the order and the involution.
Built build(const Problem& p);

}  // namespace laurentia
