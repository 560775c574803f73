#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bound_atlas {

/// One closed-form (or pinned numeric) probability value. Nullary entries
/// hold a constant; unary entries hold an evaluator over one parameter.
struct FormulaEntry {
  std::string id;
  int arity = 0;            // 0 or 1
  std::string param;        // "a" or "alpha" when arity == 1
  double lo = 0.0;          // documented parameter interval (arity == 1)
  double hi = 0.0;
  bool catalog_only = false;  // no sampling counterpart in this artifact
  bool provisional = false;   // value flagged as unsettled at the source
  std::string note;           // what the quantity is
  double value = 0.0;                  // arity == 0
  std::function<double(double)> fn;    // arity == 1
};

class FormulaCatalog {
public:
  static const FormulaCatalog& instance();

  const FormulaEntry* find(const std::string& id) const;
  const FormulaEntry& at(const std::string& id) const;  // throws on unknown id
  const std::vector<FormulaEntry>& entries() const { return entries_; }

  double eval(const std::string& id, std::optional<double> param = {},
              bool extrapolate = false) const;

  std::string to_json() const;

private:
  FormulaCatalog();
  std::vector<FormulaEntry> entries_;
};

/// Evaluate a catalog entry; unary entries outside their documented interval
/// require extrapolate=true (mirrors the source's own out-of-interval plots).
double eval_formula(const std::string& id, std::optional<double> param = {},
                    bool extrapolate = false);

struct IdentityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tol = 0.0;
  bool ok = false;
};

/// Cross-checks among catalog entries (shared values, ratios, peak location).
std::vector<IdentityCheck> formula_identities();

/// Location and value of the maximum of d3.choi.bound on [0,1].
std::pair<double, double> choi_bound_peak();

/// Independent oracle for d3.choi.bound: adaptive quadrature of the constant
/// density 36 over the region's nested coordinate bounds.
double quad_bound_choi(double a, double abs_err = 1e-8);

}  // namespace bound_atlas
