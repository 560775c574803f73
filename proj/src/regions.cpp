#include "bound_atlas/regions.hpp"

#include "bound_atlas/witnesses.hpp"

#include <cctype>
#include <sstream>

namespace bound_atlas {

bool density_region(const QPoint& Q, double tol) {
  if (Q.d == 3) {
    return Q[0] >= -tol && Q[1] >= -tol && Q[2] >= -tol &&
           Q[0] + 3 * Q[1] + 2 * Q[2] <= 1 + tol;
  }
  if (Q.d == 4) {
    return Q[0] >= -tol && Q[1] >= -tol && Q[2] >= -tol && Q[3] >= -tol &&
           Q[0] + 4 * (Q[1] + Q[2]) + 3 * Q[3] <= 1 + tol;
  }
  throw std::invalid_argument("density_region: d must be 3 or 4");
}

bool ppt_region(const QPoint& Q, double tol) {
  const double Q1 = Q[0], Q2 = Q[1], Q3 = Q[2];
  if (Q.d == 3) {
    return Q1 >= -tol && Q3 >= -tol && Q1 + 3 * Q2 + 2 * Q3 <= 1 + tol &&
           Q1 * Q1 + 3 * Q2 * Q1 + (3 * Q2 + Q3) * (3 * Q2 + Q3) <=
               3 * Q2 + 2 * Q1 * Q3 + tol;
  }
  if (Q.d == 4) {
    const double Q4 = Q[3];
    return Q3 >= -tol && Q1 + 3 * Q4 >= -tol &&
           Q1 + 4 * (Q2 + Q3) + 3 * Q4 <= 1 + tol &&
           Q1 * Q1 + 4 * Q2 * Q1 + Q4 * Q4 + 16 * Q2 * (Q2 + Q3) +
                   12 * Q2 * Q4 <=
               4 * Q2 + 2 * Q1 * Q4 + tol &&
           (Q1 - Q4) * (Q1 - Q4) <= 16 * Q3 * Q3 + tol;
  }
  throw std::invalid_argument("ppt_region: d must be 3 or 4");
}

// ---------------- expression parsing ----------------

struct RegionExpr::Node {
  enum Kind { kAtom, kNot, kAnd, kOr } kind;
  int atom_index = -1;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

class Parser {
public:
  Parser(const std::string& text, std::vector<std::string>& atoms)
      : text_(text), atoms_(atoms) {}

  std::shared_ptr<const RegionExpr::Node> parse() {
    auto node = parse_or();
    skip_ws();
    if (pos_ != text_.size())
      throw std::invalid_argument("RegionExpr: trailing input at '" +
                                  text_.substr(pos_) + "'");
    return node;
  }

private:
  using NodePtr = std::shared_ptr<const RegionExpr::Node>;

  NodePtr parse_or() {
    auto lhs = parse_and();
    while (accept('|')) {
      auto rhs = parse_and();
      auto n = std::make_shared<RegionExpr::Node>();
      n->kind = RegionExpr::Node::kOr;
      n->lhs = lhs;
      n->rhs = rhs;
      lhs = n;
    }
    return lhs;
  }

  NodePtr parse_and() {
    auto lhs = parse_factor();
    while (accept('&')) {
      auto rhs = parse_factor();
      auto n = std::make_shared<RegionExpr::Node>();
      n->kind = RegionExpr::Node::kAnd;
      n->lhs = lhs;
      n->rhs = rhs;
      lhs = n;
    }
    return lhs;
  }

  NodePtr parse_factor() {
    skip_ws();
    if (accept('!')) {
      auto n = std::make_shared<RegionExpr::Node>();
      n->kind = RegionExpr::Node::kNot;
      n->lhs = parse_factor();
      return n;
    }
    if (accept('(')) {
      auto inner = parse_or();
      if (!accept(')'))
        throw std::invalid_argument("RegionExpr: missing ')'");
      return inner;
    }
    return parse_atom();
  }

  NodePtr parse_atom() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '.'))
      ++pos_;
    if (pos_ == start)
      throw std::invalid_argument("RegionExpr: expected predicate name");
    std::string name = text_.substr(start, pos_ - start);
    auto n = std::make_shared<RegionExpr::Node>();
    n->kind = RegionExpr::Node::kAtom;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i] == name) n->atom_index = static_cast<int>(i);
    if (n->atom_index < 0) {
      n->atom_index = static_cast<int>(atoms_.size());
      atoms_.push_back(name);
    }
    return n;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  const std::string& text_;
  std::vector<std::string>& atoms_;
  std::size_t pos_ = 0;
};

bool eval_node(const RegionExpr::Node& n, const std::vector<bool>& values) {
  switch (n.kind) {
    case RegionExpr::Node::kAtom:
      return values[static_cast<std::size_t>(n.atom_index)];
    case RegionExpr::Node::kNot:
      return !eval_node(*n.lhs, values);
    case RegionExpr::Node::kAnd:
      return eval_node(*n.lhs, values) && eval_node(*n.rhs, values);
    case RegionExpr::Node::kOr:
      return eval_node(*n.lhs, values) || eval_node(*n.rhs, values);
  }
  return false;
}

}  // namespace

RegionExpr RegionExpr::parse(const std::string& text) {
  RegionExpr e;
  e.text_ = text;
  Parser p(text, e.atoms_);
  e.root_ = p.parse();
  return e;
}

bool RegionExpr::eval(
    const std::function<bool(const std::string&)>& lookup) const {
  std::vector<bool> values(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) values[i] = lookup(atoms_[i]);
  return eval_node(*root_, values);
}

bool RegionExpr::eval_atoms(const std::vector<bool>& values) const {
  if (values.size() != atoms_.size())
    throw std::invalid_argument("RegionExpr: atom value count mismatch");
  return eval_node(*root_, values);
}

// ---------------- registry ----------------

void RegionRegistry::add_predicate(const std::string& name, int d,
                                   std::function<bool(const QPoint&)> fn) {
  preds_[name] = Pred{d, std::move(fn)};
}

void RegionRegistry::add_expr(const std::string& name, int d,
                              const std::string& expr_text) {
  RegionExpr e = RegionExpr::parse(expr_text);
  for (const auto& atom : e.atoms()) {
    auto it = preds_.find(atom);
    if (it == preds_.end())
      throw std::invalid_argument("RegionRegistry: unknown predicate '" +
                                  atom + "' in expression '" + name + "'");
    if (it->second.d != d)
      throw std::invalid_argument("RegionRegistry: predicate '" + atom +
                                  "' has mismatched dimension in '" + name +
                                  "'");
  }
  if (!exprs_.count(name)) expr_order_.push_back(name);
  exprs_.insert_or_assign(name, NamedExpr{d, std::move(e)});
}

bool RegionRegistry::has(const std::string& name) const {
  return preds_.count(name) > 0 || exprs_.count(name) > 0;
}

int RegionRegistry::dim_of(const std::string& name) const {
  if (auto it = preds_.find(name); it != preds_.end()) return it->second.d;
  if (auto it = exprs_.find(name); it != exprs_.end()) return it->second.d;
  throw std::invalid_argument("RegionRegistry: unknown name '" + name + "'");
}

bool RegionRegistry::eval_predicate(const std::string& name,
                                    const QPoint& Q) const {
  auto it = preds_.find(name);
  if (it == preds_.end())
    throw std::invalid_argument("RegionRegistry: unknown predicate '" + name +
                                "'");
  if (it->second.d != Q.d)
    throw std::invalid_argument("RegionRegistry: dimension mismatch for '" +
                                name + "'");
  return it->second.fn(Q);
}

bool RegionRegistry::eval_expr(const RegionExpr& expr, const QPoint& Q) const {
  return expr.eval([&](const std::string& atom) {
    return eval_predicate(atom, Q);
  });
}

bool RegionRegistry::eval(const std::string& expr_name, const QPoint& Q) const {
  if (auto it = exprs_.find(expr_name); it != exprs_.end())
    return eval_expr(it->second.expr, Q);
  return eval_predicate(expr_name, Q);
}

const RegionExpr& RegionRegistry::expr(const std::string& name) const {
  auto it = exprs_.find(name);
  if (it == exprs_.end())
    throw std::invalid_argument("RegionRegistry: unknown expression '" + name +
                                "'");
  return it->second.expr;
}

std::vector<std::string> RegionRegistry::expr_names(int d) const {
  std::vector<std::string> out;
  for (const auto& name : expr_order_)
    if (exprs_.at(name).d == d) out.push_back(name);
  return out;
}

std::string RegionRegistry::to_json() const {
  std::ostringstream os;
  os << "{\n  \"predicates\": [";
  bool first = true;
  for (const auto& [name, pred] : preds_) {
    os << (first ? "" : ", ") << "{\"name\": \"" << name
       << "\", \"d\": " << pred.d << "}";
    first = false;
  }
  os << "],\n  \"expressions\": {\n";
  first = true;
  for (const auto& name : expr_order_) {
    if (!first) os << ",\n";
    os << "    \"" << name << "\": \"" << exprs_.at(name).expr.text() << "\"";
    first = false;
  }
  os << "\n  }\n}\n";
  return os.str();
}

const std::vector<std::pair<std::string, std::string>>& table1_rows() {
  static const std::vector<std::pair<std::string, std::string>> rows = {
      {"d3.all", "density"},
      {"d3.ppt", "ppt"},
      {"d3.mub", "mub"},
      {"d3.choi", "choi"},
      {"d3.ppt_and_mub", "ppt & mub"},
      {"d3.ppt_and_choi", "ppt & choi"},
      {"d3.mub_and_choi", "mub & choi"},
      {"d3.mub_or_choi", "mub | choi"},
      {"d3.not_mub_and_choi", "!mub & choi"},
      {"d3.mub_and_not_choi", "mub & !choi"},
      {"d3.ppt_and_not_mub", "ppt & !mub"},
      {"d3.ppt_and_not_choi", "ppt & !choi"},
      {"d3.ppt_and_mub_and_choi", "ppt & mub & choi"},
      {"d3.ppt_and_mub_or_choi", "ppt & (mub | choi)"},
      {"d3.not_ppt_and_mub", "!ppt & mub"},
      {"d3.not_ppt_and_choi", "!ppt & choi"},
      {"d3.not_ppt_and_not_mub", "!ppt & !mub"},
      {"d3.not_ppt_and_not_choi", "!ppt & !choi"},
      {"d3.not_ppt_and_not_mub_and_not_choi", "!ppt & !mub & !choi"},
      {"d3.ppt_and_not_mub_and_not_choi", "ppt & !mub & !choi"},
      {"d3.ppt_or_mub_and_choi", "ppt | (mub & choi)"},
  };
  return rows;
}

const RegionRegistry& RegionRegistry::standard() {
  static const RegionRegistry reg = [] {
    RegionRegistry r;
    r.add_predicate("density", 3,
                    [](const QPoint& Q) { return density_region(Q); });
    r.add_predicate("ppt", 3, [](const QPoint& Q) { return ppt_region(Q); });
    r.add_predicate("mub", 3,
                    [](const QPoint& Q) { return mub_predicate_hl3(Q); });
    r.add_predicate("choi", 3, [](const QPoint& Q) {
      return choi_predicate_hl3(Q);
    });
    r.add_predicate("density4", 4,
                    [](const QPoint& Q) { return density_region(Q); });
    r.add_predicate("ppt4", 4, [](const QPoint& Q) { return ppt_region(Q); });
    r.add_predicate("chrusc1", 4,
                    [](const QPoint& Q) { return chrusc_predicate(1, Q); });
    r.add_predicate("chrusc2", 4,
                    [](const QPoint& Q) { return chrusc_predicate(2, Q); });
    for (const auto& [name, expr] : table1_rows()) r.add_expr(name, 3, expr);
    r.add_expr("d4.all", 4, "density4");
    r.add_expr("d4.ppt", 4, "ppt4");
    r.add_expr("d4.chrusc1.ent", 4, "chrusc1");
    r.add_expr("d4.chrusc2.ent", 4, "chrusc2");
    r.add_expr("d4.chrusc1.bound", 4, "ppt4 & chrusc1");
    r.add_expr("d4.chrusc2.bound", 4, "ppt4 & chrusc2");
    r.add_expr("d4.chrusc.joint", 4, "ppt4 & chrusc1 & chrusc2");
    return r;
  }();
  return reg;
}

}  // namespace bound_atlas
