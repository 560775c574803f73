#pragma once

#include "bound_atlas/magic_simplex.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace bound_atlas {

/// Affine form over Q coordinates: coef . Q + constant.
/// Entanglement is flagged when the form is negative.
struct AffineQForm {
  int d = 3;
  std::array<double, 4> coef{};
  double constant = 0.0;

  double eval(const QPoint& Q) const {
    double v = constant;
    for (int i = 0; i < d; ++i) v += coef[static_cast<std::size_t>(i)] * Q[i];
    return v;
  }
  bool flags(const QPoint& Q) const { return eval(Q) < 0.0; }
};

/// A named witness: explicit matrix where one is published, affine Q-form
/// where one is derived, or both. When both are present they satisfy
/// Tr[W rho(Q)] = kappa * q_form(Q) for a fixed kappa > 0 (the conventions
/// lock asserted by the test suite).
struct WitnessSpec {
  std::string id;
  int d = 3;
  std::map<std::string, double> params;
  std::optional<ComplexMatrix> matrix;
  std::optional<AffineQForm> q_form;
  bool extrapolated = false;  // parameter outside its documented interval

  bool flags(const QPoint& Q) const {
    if (!q_form) throw std::logic_error("WitnessSpec: no Q-form for " + id);
    return q_form->flags(Q);
  }
};

// ---- d=3 predicates ----

/// Correlation test in Q coordinates: flags iff Q1 > 3 Q2 + 4 Q3.
bool mub_predicate_hl3(const QPoint& Q);

/// Full-grid correlation functional
/// I4 = 3 c00 + c01 + 2 c02 + c11 + 2 c12 + c21 + 2 c22 (d=3);
/// entanglement is flagged iff I4 > 2.
double mub_I4_full(const SimplexWeights& c);

/// Choi-map witness at a=1: flags iff 2 Q3 + 1 - 2 Q1 - 3 Q2 < 0.
bool choi_predicate_hl3(const QPoint& Q);

/// Generalized Choi-map witness. Diagonal {a,b,c,c,a,b,b,c,a}/6 with
/// a+b+c = 2, b c = (1-a)^2 and off-diagonal -1/6 coupling the |ii> kets;
/// b is the smaller root of x^2-(2-a)x+(1-a)^2 so that a=1 reproduces the
/// base witness matrix exactly.
WitnessSpec choi_witness(double a);

/// Trigonometric parameter triple; i=4 gives a=1/3. For i outside 1..5 the
/// witness range is left, which choi_witness rejects.
std::array<double, 3> choi_abc_from_i(int i);

/// Pair of linear-programming witnesses, alpha in [1/3, 2/3]:
///   first:  alpha (-3 alpha Q1 + (9 alpha - 3) Q2 + 6 alpha Q3 + Q1) < 0
///   second: alpha (3 alpha - 1)(2 Q1 + 3 Q2 - 1) > 2 alpha Q3
std::pair<bool, bool> jba3_predicates(double alpha, const QPoint& Q);
WitnessSpec jba3_witness(double alpha);        // first of the pair
WitnessSpec jba3_witness_prime(double alpha);  // second of the pair
bool jba3_alpha_in_range(double alpha);

// ---- d=4 predicates ----

/// Pair for d=4, alpha in [1/4, 1/3]:
///   first:  3 Q4 < (4 alpha - 1)(Q1 - 4 Q2)/(4 alpha)
///   second: 3 alpha Q4 < alpha (4 alpha - 1)(2 Q1 + 4 Q2 + 4 Q3 - 1)
std::pair<bool, bool> jba4_predicates(double alpha, const QPoint& Q);
WitnessSpec jba4_witness(double alpha);
WitnessSpec jba4_witness_prime(double alpha);
bool jba4_alpha_in_range(double alpha);

/// Two-ququart witnesses. Variant 1 flags iff 2(Q2+Q3) + 3 Q4 < Q1;
/// variant 2 (diagonal {2,1,0,0,0,2,1,0,0,0,2,1,1,0,0,2}) flags iff
/// 4 Q2 + 9 Q4 < Q1.
WitnessSpec chrusc_witness(int variant);
bool chrusc_predicate(int variant, const QPoint& Q);

/// 16x16 witness with diagonal pattern a,b,c,d cycling along the shifted
/// diagonals and -1 coupling the |ii> kets; parameters nonnegative and
/// summing to 3.
WitnessSpec wabcd_witness(double a, double b, double c, double d);
/// Class constraints: a+c=2, b+d=1, bd=(1-a)^2 (valid for a in [1/2,3/2]).
WitnessSpec wabcd_class1(double a);
/// Class constraints: a+c=1, b+d=2, ac=(1-b)^2 (valid for a in [0,1]).
WitnessSpec wabcd_class2(double a);

/// The single published correlation-basis witness instance (d=3, prefactor
/// 1/3). Detects nothing on this family; kept for the vertex-minimum check.
WitnessSpec mub_torus_instance();

/// Minimum of Tr[W rho(v)] over the density polytope's vertices. The trace
/// is affine in Q, so this is the global minimum over the family.
double witness_min_over_vertices(const WitnessSpec& w);

/// Vertices of the d=3 / d=4 density polytopes in Q coordinates.
std::vector<QPoint> density_polytope_vertices(int d);

/// Realignment criterion: nuclear norm of the realigned matrix exceeds 1.
bool ccnr_flag(const ComplexMatrix& rho, double tol = kPsdTol);
bool ccnr_flag(const Matrix& rho, int da, int db, double tol = kPsdTol);

/// JSON dump of the named witnesses (matrix entries and Q-forms).
std::string witness_catalog_json();

}  // namespace bound_atlas
