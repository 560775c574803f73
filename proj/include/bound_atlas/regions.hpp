#pragma once

#include "bound_atlas/magic_simplex.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace bound_atlas {

// Residual tolerance for the polynomial region inequalities. Boundary
// points within tol classify as inside (the faces have measure zero and
// the embedded one-parameter states sit exactly on Q3 = 0).
inline constexpr double kRegionTol = 1e-12;

/// Density-matrix validity in Q coordinates.
/// d=3: Q1,Q2,Q3 >= 0 and Q1+3Q2+2Q3 <= 1.
/// d=4: Q1..Q4 >= 0 and Q1+4(Q2+Q3)+3Q4 <= 1.
bool density_region(const QPoint& Q, double tol = kRegionTol);

/// Positivity of the partial transpose in Q coordinates.
/// d=3: Q1 >= 0, Q3 >= 0, Q1+3Q2+2Q3 <= 1 and
///      Q1^2 + 3 Q2 Q1 + (3Q2+Q3)^2 <= 3 Q2 + 2 Q1 Q3.
/// d=4: Q3 >= 0, Q1+3Q4 >= 0, Q1+4(Q2+Q3)+3Q4 <= 1,
///      Q1^2+4Q2Q1+Q4^2+16Q2(Q2+Q3)+12Q2Q4 <= 4Q2+2Q1Q4 and
///      (Q1-Q4)^2 <= 16 Q3^2.
bool ppt_region(const QPoint& Q, double tol = kRegionTol);

/// Boolean combination of named predicates. Grammar:
///   expr   := term ('|' term)*
///   term   := factor ('&' factor)*
///   factor := '!' factor | '(' expr ')' | identifier
/// Identifiers are [A-Za-z0-9_.]+.
class RegionExpr {
public:
  static RegionExpr parse(const std::string& text);

  /// Predicate names referenced by the expression, in first-use order.
  const std::vector<std::string>& atoms() const { return atoms_; }

  /// Evaluate against a name -> bool lookup.
  bool eval(const std::function<bool(const std::string&)>& lookup) const;

  /// Evaluate against values indexed as in atoms() (hot path).
  bool eval_atoms(const std::vector<bool>& values) const;

  const std::string& text() const { return text_; }

  struct Node;  // expression tree node; exposed for the evaluator

private:
  std::shared_ptr<const Node> root_;
  std::vector<std::string> atoms_;
  std::string text_;
};

/// Named predicates over QPoint plus named boolean expressions over them.
class RegionRegistry {
public:
  void add_predicate(const std::string& name, int d,
                     std::function<bool(const QPoint&)> fn);
  void add_expr(const std::string& name, int d, const std::string& expr_text);

  bool has(const std::string& name) const;
  int dim_of(const std::string& name) const;

  bool eval_predicate(const std::string& name, const QPoint& Q) const;
  bool eval(const std::string& expr_name, const QPoint& Q) const;

  /// Evaluate a free-standing expression against this registry's predicates.
  bool eval_expr(const RegionExpr& expr, const QPoint& Q) const;

  const RegionExpr& expr(const std::string& name) const;
  std::vector<std::string> expr_names(int d) const;

  /// name -> expression string document, for reproducibility manifests.
  std::string to_json() const;

  /// Registry preloaded with the d=3/d=4 predicates and the named
  /// d=3 probability-table rows.
  static const RegionRegistry& standard();

private:
  struct Pred {
    int d;
    std::function<bool(const QPoint&)> fn;
  };
  struct NamedExpr {
    int d;
    RegionExpr expr;
  };
  std::map<std::string, Pred> preds_;
  std::map<std::string, NamedExpr> exprs_;
  std::vector<std::string> expr_order_;
};

/// Names of the d=3 probability-table rows in table order (these double as
/// formula-catalog ids so estimates can be joined with exact values).
const std::vector<std::pair<std::string, std::string>>& table1_rows();

}  // namespace bound_atlas
