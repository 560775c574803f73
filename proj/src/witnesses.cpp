#include "bound_atlas/witnesses.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace bound_atlas {

namespace {
constexpr double kPi = 3.14159265358979323846;

// -1 coupling between the |ii> kets, the common off-diagonal block of the
// Choi-type witnesses.
void add_bell_offdiag(Matrix& w, int d, double scale) {
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) w(i * d + i, j * d + j) += -scale;
}
}  // namespace

bool mub_predicate_hl3(const QPoint& Q) {
  if (Q.d != 3) throw std::invalid_argument("mub_predicate_hl3: d must be 3");
  return Q[0] > 3 * Q[1] + 4 * Q[2];
}

double mub_I4_full(const SimplexWeights& c) {
  if (c.d != 3) throw std::invalid_argument("mub_I4_full: d must be 3");
  return 3 * c.at(0, 0) + c.at(0, 1) + 2 * c.at(0, 2) + c.at(1, 1) +
         2 * c.at(1, 2) + c.at(2, 1) + 2 * c.at(2, 2);
}

bool choi_predicate_hl3(const QPoint& Q) {
  if (Q.d != 3) throw std::invalid_argument("choi_predicate_hl3: d must be 3");
  return 2 * Q[2] + 1 - 2 * Q[0] - 3 * Q[1] < 0;
}

WitnessSpec choi_witness(double a) {
  if (a < 0.0 || a > 1.0)
    throw std::domain_error("choi_witness: a must lie in [0,1]");
  const double disc = a * (4 - 3 * a);  // discriminant of x^2-(2-a)x+(1-a)^2
  const double b = ((2 - a) - std::sqrt(disc)) / 2.0;
  const double c = ((2 - a) + std::sqrt(disc)) / 2.0;

  Matrix m = Matrix::Zero(9, 9);
  // diagonal {a,b,c, c,a,b, b,c,a} row-major over |ij>
  const double diag[9] = {a, b, c, c, a, b, b, c, a};
  for (int i = 0; i < 9; ++i) m(i, i) = diag[i];
  add_bell_offdiag(m, 3, 1.0);
  m *= 1.0 / 6.0;

  WitnessSpec w;
  w.id = "choi";
  w.d = 3;
  w.params = {{"a", a}, {"b", b}, {"c", c}};
  w.matrix = ComplexMatrix(m, 3, 3);
  // Tr[W rho(Q)] = (1/6)((a-2-c) Q1 + 3(b-c) Q2 + 2(a+1-c) Q3 + c)
  AffineQForm f;
  f.d = 3;
  f.coef = {a - 2 - c, 3 * (b - c), 2 * (a + 1 - c), 0.0};
  f.constant = c;
  w.q_form = f;
  return w;
}

std::array<double, 3> choi_abc_from_i(int i) {
  if (i < 0 || i > 5)
    throw std::out_of_range("choi_abc_from_i: i must lie in 0..5");
  const double t = kPi * i / 3.0;
  const double a = (2.0 / 3.0) * (std::cos(t) + 1);
  const double b =
      (2.0 / 3.0) * (-0.5 * std::sqrt(3.0) * std::sin(t) - 0.5 * std::cos(t) + 1);
  const double c =
      (2.0 / 3.0) * (0.5 * std::sqrt(3.0) * std::sin(t) - 0.5 * std::cos(t) + 1);
  return {a, b, c};
}

bool jba3_alpha_in_range(double alpha) {
  return alpha >= 1.0 / 3.0 && alpha <= 2.0 / 3.0;
}

std::pair<bool, bool> jba3_predicates(double alpha, const QPoint& Q) {
  if (Q.d != 3) throw std::invalid_argument("jba3_predicates: d must be 3");
  const double Q1 = Q[0], Q2 = Q[1], Q3 = Q[2];
  const bool first =
      alpha * (-3 * alpha * Q1 + (9 * alpha - 3) * Q2 + 6 * alpha * Q3 + Q1) <
      0;
  const bool second =
      alpha * (3 * alpha - 1) * (2 * Q1 + 3 * Q2 - 1) > 2 * alpha * Q3;
  return {first, second};
}

WitnessSpec jba3_witness(double alpha) {
  WitnessSpec w;
  w.id = "jba3";
  w.d = 3;
  w.params = {{"alpha", alpha}};
  w.extrapolated = !jba3_alpha_in_range(alpha);
  AffineQForm f;
  f.d = 3;
  f.coef = {alpha * (1 - 3 * alpha), alpha * (9 * alpha - 3), 6 * alpha * alpha,
            0.0};
  f.constant = 0.0;
  w.q_form = f;
  return w;
}

WitnessSpec jba3_witness_prime(double alpha) {
  WitnessSpec w;
  w.id = "jba3p";
  w.d = 3;
  w.params = {{"alpha", alpha}};
  w.extrapolated = !jba3_alpha_in_range(alpha);
  // 2 alpha Q3 - alpha(3 alpha - 1)(2 Q1 + 3 Q2 - 1) < 0 flags
  const double g = alpha * (3 * alpha - 1);
  AffineQForm f;
  f.d = 3;
  f.coef = {-2 * g, -3 * g, 2 * alpha, 0.0};
  f.constant = g;
  w.q_form = f;
  return w;
}

bool jba4_alpha_in_range(double alpha) {
  return alpha >= 0.25 && alpha <= 1.0 / 3.0;
}

std::pair<bool, bool> jba4_predicates(double alpha, const QPoint& Q) {
  if (Q.d != 4) throw std::invalid_argument("jba4_predicates: d must be 4");
  const double Q1 = Q[0], Q2 = Q[1], Q3 = Q[2], Q4 = Q[3];
  const bool first = 3 * Q4 < (4 * alpha - 1) * (Q1 - 4 * Q2) / (4 * alpha);
  const bool second =
      3 * alpha * Q4 < alpha * (4 * alpha - 1) * (2 * Q1 + 4 * Q2 + 4 * Q3 - 1);
  return {first, second};
}

WitnessSpec jba4_witness(double alpha) {
  WitnessSpec w;
  w.id = "jba4";
  w.d = 4;
  w.params = {{"alpha", alpha}};
  w.extrapolated = !jba4_alpha_in_range(alpha);
  const double g = (4 * alpha - 1) / (4 * alpha);
  AffineQForm f;
  f.d = 4;
  f.coef = {-g, 4 * g, 0.0, 3.0};
  f.constant = 0.0;
  w.q_form = f;
  return w;
}

WitnessSpec jba4_witness_prime(double alpha) {
  WitnessSpec w;
  w.id = "jba4p";
  w.d = 4;
  w.params = {{"alpha", alpha}};
  w.extrapolated = !jba4_alpha_in_range(alpha);
  const double g = alpha * (4 * alpha - 1);
  AffineQForm f;
  f.d = 4;
  f.coef = {-2 * g, -4 * g, -4 * g, 3 * alpha};
  f.constant = g;
  w.q_form = f;
  return w;
}

bool chrusc_predicate(int variant, const QPoint& Q) {
  if (Q.d != 4) throw std::invalid_argument("chrusc_predicate: d must be 4");
  if (variant == 1) return 2 * (Q[1] + Q[2]) + 3 * Q[3] < Q[0];
  if (variant == 2) return 4 * Q[1] + 9 * Q[3] < Q[0];
  throw std::invalid_argument("chrusc_predicate: unknown variant");
}

namespace {
WitnessSpec make_wabcd(const std::string& id, double a, double b, double c,
                       double d) {
  const double vals[4] = {a, b, c, d};
  double sum = 0;
  for (double v : vals) {
    if (v < -1e-10)
      throw std::invalid_argument(id + ": parameters must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 3.0) > 1e-10)
    throw std::invalid_argument(id + ": parameters must sum to 3");

  Matrix m = Matrix::Zero(16, 16);
  // diagonal value at |i,j> depends on the shift class j-i mod 4:
  // j=i -> a, j=i+1 -> b, j=i+2 -> c, j=i+3 -> d
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i * 4 + j, i * 4 + j) = vals[(j - i + 4) % 4];
  add_bell_offdiag(m, 4, 1.0);

  WitnessSpec w;
  w.id = id;
  w.d = 4;
  w.params = {{"a", a}, {"b", b}, {"c", c}, {"d", d}};
  w.matrix = ComplexMatrix(m, 4, 4);
  // Tr[W rho(Q)] = (a-3-d) Q1 + 4(b-d) Q2 + 4(c-d) Q3 + 3(a+1-d) Q4 + d
  AffineQForm f;
  f.d = 4;
  f.coef = {a - 3 - d, 4 * (b - d), 4 * (c - d), 3 * (a + 1 - d)};
  f.constant = d;
  w.q_form = f;
  return w;
}
}  // namespace

WitnessSpec chrusc_witness(int variant) {
  if (variant == 1) {
    WitnessSpec w = make_wabcd("chrusc1", 1, 1, 1, 0);
    // published form: flags iff 2(Q2+Q3)+3Q4 < Q1; trace = 2x that form
    AffineQForm f;
    f.d = 4;
    f.coef = {-1, 2, 2, 3};
    f.constant = 0.0;
    w.q_form = f;
    return w;
  }
  if (variant == 2) {
    WitnessSpec w = make_wabcd("chrusc2", 2, 1, 0, 0);
    AffineQForm f;
    f.d = 4;
    f.coef = {-1, 4, 0, 9};
    f.constant = 0.0;
    w.q_form = f;
    return w;
  }
  throw std::invalid_argument("chrusc_witness: unknown variant");
}

WitnessSpec wabcd_witness(double a, double b, double c, double d) {
  return make_wabcd("wabcd", a, b, c, d);
}

WitnessSpec wabcd_class1(double a) {
  const double disc = (2 * a - 1) * (3 - 2 * a);
  if (disc < -1e-12)
    throw std::domain_error("wabcd_class1: a must lie in [1/2, 3/2]");
  const double b = (1 + std::sqrt(std::max(0.0, disc))) / 2.0;
  WitnessSpec w = make_wabcd("wabcd.c1", a, b, 2 - a, 1 - b);
  return w;
}

WitnessSpec wabcd_class2(double a) {
  if (a < -1e-12 || a > 1 + 1e-12)
    throw std::domain_error("wabcd_class2: a must lie in [0, 1]");
  const double b = 1 + std::sqrt(std::max(0.0, a * (1 - a)));
  WitnessSpec w = make_wabcd("wabcd.c2", a, b, 1 - a, 2 - b);
  return w;
}

WitnessSpec mub_torus_instance() {
  // prefactor 1/3; published real symmetric pattern
  const double rows[9][9] = {
      {4, 0, 0, 0, -1, 0, 0, 0, -1},
      {0, 1, 0, 0, 0, 2, 2, 0, 0},
      {0, 0, 1, 2, 0, 0, 0, 2, 0},
      {0, 0, 2, 1, 0, 0, 0, 2, 0},
      {-1, 0, 0, 0, 4, 0, 0, 0, -1},
      {0, 2, 0, 0, 0, 1, 2, 0, 0},
      {0, 2, 0, 0, 0, 2, 1, 0, 0},
      {0, 0, 2, 2, 0, 0, 0, 1, 0},
      {-1, 0, 0, 0, -1, 0, 0, 0, 4},
  };
  Matrix m(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) m(i, j) = rows[i][j] / 3.0;
  WitnessSpec w;
  w.id = "mub_torus";
  w.d = 3;
  w.matrix = ComplexMatrix(m, 3, 3);
  return w;
}

std::vector<QPoint> density_polytope_vertices(int d) {
  if (d == 3)
    return {make_q3(0, 0, 0), make_q3(1, 0, 0), make_q3(0, 1.0 / 3.0, 0),
            make_q3(0, 0, 0.5)};
  if (d == 4)
    return {make_q4(0, 0, 0, 0), make_q4(1, 0, 0, 0),
            make_q4(0, 0.25, 0, 0), make_q4(0, 0, 0.25, 0),
            make_q4(0, 0, 0, 1.0 / 3.0)};
  throw std::invalid_argument("density_polytope_vertices: d must be 3 or 4");
}

double witness_min_over_vertices(const WitnessSpec& w) {
  if (!w.matrix)
    throw std::invalid_argument("witness_min_over_vertices: no matrix for " +
                                w.id);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : density_polytope_vertices(w.d)) {
    Complex t = trace_pair(w.matrix->mat(), hl_density(v).mat());
    best = std::min(best, t.real());
  }
  return best;
}

bool ccnr_flag(const Matrix& rho, int da, int db, double tol) {
  return nuclear_norm(realign(rho, da, db)) > 1.0 + tol;
}

bool ccnr_flag(const ComplexMatrix& rho, double tol) {
  if (!rho.has_split())
    throw std::invalid_argument("ccnr_flag: missing bipartite split");
  return ccnr_flag(rho.mat(), rho.dim_a(), rho.dim_b(), tol);
}

namespace {
void dump_witness(std::ostringstream& os, const WitnessSpec& w, bool first) {
  if (!first) os << ",\n";
  os << "    {\"id\": \"" << w.id << "\", \"d\": " << w.d << ", \"params\": {";
  bool p0 = true;
  for (const auto& [k, v] : w.params) {
    os << (p0 ? "" : ", ") << "\"" << k << "\": " << v;
    p0 = false;
  }
  os << "}";
  if (w.q_form) {
    os << ", \"q_form\": \"";
    for (int i = 0; i < w.d; ++i) {
      double cf = w.q_form->coef[static_cast<std::size_t>(i)];
      os << (i ? (cf < 0 ? " - " : " + ") : (cf < 0 ? "-" : ""))
         << std::abs(cf) << "*Q" << (i + 1);
    }
    double c0 = w.q_form->constant;
    os << (c0 < 0 ? " - " : " + ") << std::abs(c0) << " < 0\"";
  }
  if (w.matrix) {
    os << ", \"matrix\": [";
    const Matrix& m = w.matrix->mat();
    for (int i = 0; i < m.rows(); ++i) {
      os << (i ? "," : "") << "[";
      for (int j = 0; j < m.cols(); ++j) {
        os << (j ? "," : "") << "[" << m(i, j).real() << "," << m(i, j).imag()
           << "]";
      }
      os << "]";
    }
    os << "]";
  }
  os << "}";
}
}  // namespace

std::string witness_catalog_json() {
  std::ostringstream os;
  os << "{\n  \"witnesses\": [\n";
  bool first = true;
  for (const WitnessSpec& w :
       {choi_witness(1.0), choi_witness(1.0 / 3.0), chrusc_witness(1),
        chrusc_witness(2), wabcd_class1(1.0), wabcd_class2(1.0),
        mub_torus_instance(), jba3_witness(0.5), jba3_witness_prime(0.5),
        jba4_witness(0.3), jba4_witness_prime(0.3)}) {
    dump_witness(os, w, first);
    first = false;
  }
  os << "\n  ]\n}\n";
  return os.str();
}

}  // namespace bound_atlas
