#include "bound_atlas/repro.hpp"

#include "bound_atlas/formulas.hpp"
#include "bound_atlas/linalg.hpp"
#include "bound_atlas/regions.hpp"
#include "bound_atlas/sampler.hpp"
#include "bound_atlas/witnesses.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace bound_atlas {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

CheckResult abs_check(const std::string& name, double measured, double target,
                      double tol) {
  CheckResult c;
  c.name = name;
  c.pass = std::abs(measured - target) <= tol;
  c.detail = fmt(measured) + " vs " + fmt(target) + " (abs tol " + fmt(tol) + ")";
  return c;
}

CheckResult rel_check(const std::string& name, double measured, double target,
                      double rel_tol) {
  CheckResult c;
  c.name = name;
  c.pass = std::abs(measured - target) <= rel_tol * std::abs(target);
  c.detail =
      fmt(measured) + " vs " + fmt(target) + " (rel tol " + fmt(rel_tol) + ")";
  return c;
}

CheckResult flag_check(const std::string& name, bool ok, std::string detail) {
  CheckResult c;
  c.name = name;
  c.pass = ok;
  c.detail = std::move(detail);
  return c;
}

SampleTest q_test(std::string name, std::function<bool(const QPoint&)> fn) {
  return SampleTest{std::move(name), [fn = std::move(fn)](const SamplePoint& sp) {
                      return fn(sp.Q);
                    }};
}

double row(const EstimateTable& t, const std::string& name) {
  for (const auto& r : t.rows)
    if (r.name == name) return r.estimate;
  throw std::logic_error("missing estimate row " + name);
}

std::uint64_t row_hits(const EstimateTable& t, const std::string& name) {
  for (const auto& r : t.rows)
    if (r.name == name) return r.hits;
  throw std::logic_error("missing estimate row " + name);
}

// ---- exact rational arithmetic for the symbolic line check ----

struct Rational {
  long long num = 0, den = 1;

  Rational() = default;
  Rational(long long n) : num(n) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(std::abs(num), den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  Rational operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
  }
  Rational operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
  }
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
};

// exact Q coordinates of the embedded line at rational lambda
std::array<Rational, 3> horodecki_Q_exact(const Rational& lam) {
  // q1=(30-5L)/21, q2=-8L/21, q3=(5-2L)/7
  Rational q1 = (Rational(30) - Rational(5) * lam) * Rational(1, 21);
  Rational q2 = Rational(-8) * lam * Rational(1, 21);
  Rational q3 = (Rational(5) - Rational(2) * lam) * Rational(1, 7);
  Rational Q1 = (Rational(32) * q1 - Rational(5) * q2 - Rational(20) * q3 +
                 Rational(20)) *
                Rational(1, 180);
  Rational Q2 = (Rational(-4) * q1 - Rational(5) * q2 + Rational(40) * q3 +
                 Rational(20)) *
                Rational(1, 180);
  Rational Q3 = (Rational(-8) * q1 + Rational(35) * q2 - Rational(40) * q3 +
                 Rational(40)) *
                Rational(1, 360);
  return {Q1, Q2, Q3};
}

// PPT polynomial residual 3Q2 + 2Q1Q3 - Q1^2 - 3Q2Q1 - (3Q2+Q3)^2 at
// rational lambda
Rational ppt_residual_exact(const Rational& lam) {
  auto Q = horodecki_Q_exact(lam);
  Rational t = Rational(3) * Q[1] + Q[2];
  return Rational(3) * Q[1] + Rational(2) * Q[0] * Q[2] - Q[0] * Q[0] -
         Rational(3) * Q[1] * Q[0] - t * t;
}

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ======================= criteria =======================

CriterionResult criterion1() {
  CriterionResult r;
  r.number = 1;
  r.title = "formula fidelity (catalog values match the quoted decimals)";
  const auto& cat = FormulaCatalog::instance();

  // quoted decimal strings; tolerance is one unit in the last quoted place
  const std::vector<std::pair<std::string, std::string>> printed = {
      {"d3.all", "1.0"},
      {"d3.ppt", "0.537422"},
      {"d3.mub", "0.1666667"},
      {"d3.choi", "0.1666667"},
      {"d3.ppt_and_mub", "0.00736862"},
      {"d3.ppt_and_choi", "0.00736862"},
      {"d3.mub_and_choi", "0.11111"},
      {"d3.mub_or_choi", "0.22222"},
      {"d3.not_mub_and_choi", "0.05555"},
      {"d3.mub_and_not_choi", "0.05555"},
      {"d3.ppt_and_not_mub", "0.5300534"},
      {"d3.ppt_and_not_choi", "0.5300534"},
      {"d3.ppt_and_mub_and_choi", "0.0"},
      {"d3.ppt_and_mub_or_choi", "0.0147372"},
      {"d3.not_ppt_and_mub", "0.1592980"},
      {"d3.not_ppt_and_choi", "0.1592980"},
      {"d3.not_ppt_and_not_mub", "0.303279920"},
      {"d3.not_ppt_and_not_choi", "0.303279920"},
      {"d3.not_ppt_and_not_mub_and_not_choi", "0.255092985"},
      {"d3.ppt_and_not_mub_and_not_choi", "0.5226847927"},
      {"d3.ppt_or_mub_and_choi", "0.648533145"},
      {"d3.jba.limit", "0.0169299"},
      {"d3.horodecki.ppt", "0.6"},
      {"d3.horodecki.ent", "0.6"},
      {"d3.horodecki.bound", "0.2"},
      {"d3.ccnr.ent", "0.445977184637177"},
      {"d3.ccnr.bound", "0.0189035154692955"},
      {"d4.ppt", "0.404957"},
      {"d4.chrusc1.bound", "0.00051583"},
      {"d4.chrusc2.bound", "0.00218722"},
      {"d4.chrusc.joint", "0.000395295"},
      {"d4.wabcd.both_at_half", "0.124121212"},
      {"d4.wabcd.either_at_half", "0.163317384"},
      {"d4.wabcd.both_at_one", "0.000122436"},
      {"d4.wabcd.either_at_one", "0.193939"},
      {"d4.w4.ent", "0.32"},
      {"d4.jba.limit", "0.00728067"},
      {"d4.ccnr.ent", "0.03125"},
      {"d4.ccnr.bound", "0.01265489845176"},
      {"full8.ppt.conj", "0.3933896249"},
      {"full8.mub_ppt.est", "0.00011335"},
      {"full15.ppt.conj", "0.115737"},
      {"full15.ccnr.ent.est", "0.55397"},
      {"full15.ccnr.bound.conj", "0.00133333"},
      {"gh4.ppt", "0.3333"},
      {"gh4.bound", "0.0416667"},
      {"gh5.ppt", "0.33734924124312192527"},
      {"gh5.bound", "0.0370662"},
      {"gh3.bound", "0.0697332"},
      {"hw3.ppt", "0.792568"},
      {"hw4.ppt", "0.732687"},
      {"hw5.ppt", "0.758301"},
      {"hw5.bound_at_sixth", "0.00839808"},
      {"hw5.bound_jump", "0.1646314041874492"},
  };
  for (const auto& [id, dec] : printed) {
    double target = std::stod(dec);
    auto dot = dec.find('.');
    int places = dot == std::string::npos
                     ? 0
                     : static_cast<int>(dec.size() - dot - 1);
    double tol = std::pow(10.0, -places);
    r.checks.push_back(abs_check(id + " == " + dec, cat.eval(id), target, tol));
  }
  // exact-form values quoted alongside inconsistent decimals or fractions
  r.checks.push_back(abs_check(
      "gh3.ppt == (4*sqrt3*pi-9)/27 (quoted 0.4278 is a digit swap of 0.4728)",
      cat.eval("gh3.ppt"), (4 * std::sqrt(3.0) * 3.14159265358979323846 - 9) / 27,
      1e-12));
  r.checks.push_back(abs_check(
      "gh3.bound == (2*sqrt3*pi-9)/27 (quoted 0.0697322 misprints 0.0697332)",
      cat.eval("gh3.bound"),
      (2 * std::sqrt(3.0) * 3.14159265358979323846 - 9) / 27, 1e-12));
  r.checks.push_back(abs_check("hw4.ppt == 437/192 - 7*sqrt7/12",
                               cat.eval("hw4.ppt"),
                               437.0 / 192.0 - 7 * std::sqrt(7.0) / 12, 1e-12));
  r.checks.push_back(abs_check("d4.chrusc1.ent == 2/9",
                               cat.eval("d4.chrusc1.ent"), 2.0 / 9.0, 1e-15));
  r.checks.push_back(abs_check("d4.chrusc2.ent == 1/8",
                               cat.eval("d4.chrusc2.ent"), 0.125, 1e-15));
  // quoted values of the unary families
  r.checks.push_back(abs_check("d3.choi.bound(1/3) == 0.00325612294236",
                               cat.eval("d3.choi.bound", 1.0 / 3.0),
                               0.00325612294236, 1e-11));
  r.checks.push_back(abs_check("d3.choi.ent((3-sqrt5)/4) == 0.274093",
                               cat.eval("d3.choi.ent", (3 - std::sqrt(5.0)) / 4),
                               0.274093, 1e-6));
  r.checks.push_back(abs_check("d3.jba.bound(1/2) == 0.00470668",
                               cat.eval("d3.jba.bound", 0.5), 0.00470668,
                               1e-8));
  r.checks.push_back(abs_check("d4.jba.bound(1/3) == 0.00162026",
                               cat.eval("d4.jba.bound", 1.0 / 3.0), 0.00162026,
                               1e-8));
  return r;
}

CriterionResult criterion2() {
  CriterionResult r;
  r.number = 2;
  r.title = "formula identities";
  for (const auto& c : formula_identities()) {
    CheckResult cr;
    cr.name = c.name;
    cr.pass = c.ok;
    cr.detail = fmt(c.lhs) + " vs " + fmt(c.rhs) + " (tol " + fmt(c.tol) + ")";
    r.checks.push_back(cr);
  }
  return r;
}

CriterionResult criterion3() {
  CriterionResult r;
  r.number = 3;
  r.title = "quadrature oracle agrees with the closed form";
  const auto& cat = FormulaCatalog::instance();
  auto try_a = [&](double a, const std::string& label) {
    r.checks.push_back(abs_check("quad_bound_choi(" + label + ")",
                                 quad_bound_choi(a),
                                 cat.eval("d3.choi.bound", a), 1e-6));
  };
  try_a(1.0, "1");
  try_a(1.0 / 3.0, "1/3");
  try_a((3 - std::sqrt(5.0)) / 4, "(3-sqrt5)/4");
  bool grid_ok = true;
  double worst = 0;
  for (int i = 1; i <= 20; ++i) {
    double a = 0.05 + (1.0 - 0.05) * i / 20.0;
    double diff = std::abs(quad_bound_choi(a) - cat.eval("d3.choi.bound", a));
    worst = std::max(worst, diff);
    grid_ok = grid_ok && diff < 1e-6;
  }
  r.checks.push_back(
      flag_check("20-point grid within 1e-6", grid_ok,
                 "worst abs difference " + fmt(worst)));
  return r;
}

CriterionResult criterion4(const ReproOptions& opt) {
  CriterionResult r;
  r.number = 4;
  r.title = "quasi-random estimates vs closed forms, fast lane, N=1e7";
  const auto& cat = FormulaCatalog::instance();
  const std::uint64_t N = 10'000'000;
  RobertsConfig cfg{3, 0.5, 0};
  EstimateOptions eo;
  eo.workers = opt.workers;

  std::vector<SampleTest> t3;
  const auto& reg = RegionRegistry::standard();
  for (const std::string name :
       {"d3.ppt", "d3.mub", "d3.choi", "d3.mub_or_choi", "d3.mub_and_choi",
        "d3.ppt_and_mub", "d3.ppt_and_choi", "d3.ppt_and_mub_and_choi"})
    t3.push_back(q_test(name, [&reg, name = std::string(name)](const QPoint& Q) {
      return reg.eval(name, Q);
    }));
  EstimateTable e3 = estimate(Family::HL3, t3, cfg, N, eo);

  for (const std::string name : {"d3.ppt", "d3.mub", "d3.choi",
                                 "d3.mub_or_choi", "d3.mub_and_choi"})
    r.checks.push_back(abs_check(name, row(e3, name), cat.eval(name), 2e-3));
  for (const std::string name : {"d3.ppt_and_mub", "d3.ppt_and_choi"})
    r.checks.push_back(rel_check(name, row(e3, name), cat.eval(name), 0.05));
  r.checks.push_back(flag_check(
      "d3.ppt_and_mub_and_choi has zero hits",
      row_hits(e3, "d3.ppt_and_mub_and_choi") == 0,
      std::to_string(row_hits(e3, "d3.ppt_and_mub_and_choi")) + " hits"));

  std::vector<SampleTest> t4;
  for (const std::string name :
       {"d4.ppt", "d4.chrusc1.ent", "d4.chrusc2.ent", "d4.chrusc1.bound",
        "d4.chrusc2.bound"})
    t4.push_back(q_test(name, [&reg, name = std::string(name)](const QPoint& Q) {
      return reg.eval(name, Q);
    }));
  EstimateTable e4 = estimate(Family::HL4, t4, RobertsConfig{4, 0.5, 0}, N, eo);
  for (const std::string name : {"d4.ppt", "d4.chrusc1.ent", "d4.chrusc2.ent"})
    r.checks.push_back(abs_check(name, row(e4, name), cat.eval(name), 2e-3));
  r.checks.push_back(rel_check("d4.chrusc2.bound", row(e4, "d4.chrusc2.bound"),
                               cat.eval("d4.chrusc2.bound"), 0.05));
  r.checks.push_back(rel_check("d4.chrusc1.bound", row(e4, "d4.chrusc1.bound"),
                               cat.eval("d4.chrusc1.bound"), 0.20));
  return r;
}

CriterionResult criterion5(const ReproOptions& opt) {
  CriterionResult r;
  r.number = 5;
  r.title = "embedded one-parameter line";
  EstimateOptions eo;
  eo.workers = opt.workers;
  std::vector<SampleTest> tests;
  tests.push_back(q_test("ppt", [](const QPoint& Q) { return ppt_region(Q); }));
  tests.push_back(q_test("ppt_and_mub", [](const QPoint& Q) {
    return ppt_region(Q) && mub_predicate_hl3(Q);
  }));
  EstimateTable e = estimate(Family::HorodeckiLine, tests,
                             RobertsConfig{1, 0.5, 0}, 1'000'000, eo);
  r.checks.push_back(abs_check("line ppt", row(e, "ppt"), 0.600, 1e-3));
  r.checks.push_back(
      abs_check("line ppt & mub", row(e, "ppt_and_mub"), 0.200, 1e-3));

  // exact reduction: the PPT residual on Q(L) = (2/7,(5-L)/21,0) equals
  // -(L-1)(L-4)/49, and the remaining constraints reduce to 0 <= L <= 5
  auto Q0 = horodecki_Q_exact(Rational(0));
  auto Q1 = horodecki_Q_exact(Rational(1));
  bool embed_ok = Q0[0] == Rational(2, 7) && Q0[1] == Rational(5, 21) &&
                  Q0[2] == Rational(0) && Q1[0] == Rational(2, 7) &&
                  Q1[1] == Rational(4, 21) && Q1[2] == Rational(0);
  r.checks.push_back(flag_check("exact embedding Q(L) = (2/7,(5-L)/21,0)",
                                embed_ok, "checked at L=0 and L=1"));
  // residual is quadratic; three exact samples pin its coefficients
  Rational r0 = ppt_residual_exact(Rational(0));
  Rational r1 = ppt_residual_exact(Rational(1));
  Rational r2 = ppt_residual_exact(Rational(2));
  // c0 + c1 L + c2 L^2 with c0 = r0, c2 = (r2 - 2 r1 + r0)/2
  Rational c0 = r0;
  Rational c2 = (r2 - r1 - r1 + r0) * Rational(1, 2);
  Rational c1 = r1 - r0 - c2;
  bool poly_ok = c0 == Rational(-4, 49) && c1 == Rational(5, 49) &&
                 c2 == Rational(-1, 49);
  r.checks.push_back(flag_check(
      "PPT residual == -(L-1)(L-4)/49 exactly", poly_ok,
      "coefficients (" + std::to_string(c0.num) + "/" + std::to_string(c0.den) +
          ", " + std::to_string(c1.num) + "/" + std::to_string(c1.den) + ", " +
          std::to_string(c2.num) + "/" + std::to_string(c2.den) + ")"));
  return r;
}

CriterionResult criterion6() {
  CriterionResult r;
  r.number = 6;
  r.title = "oracle equivalence and witness conventions";

  // predicates vs spectra over bounding boxes around each polytope
  for (int d : {3, 4}) {
    const int dim = d;
    RobertsConfig cfg{dim, 0.5, 0};
    const double scale3[3] = {1.0, 1.0 / 3.0, 1.0 / 2.0};
    const double scale4[4] = {1.0, 0.25, 0.25, 1.0 / 3.0};
    std::uint64_t checked = 0, density_bad = 0, ppt_bad = 0;
    double u[4];
    for (std::uint64_t n = 0; n < 100'000; ++n) {
      roberts_point(cfg, n, std::span<double>(u, static_cast<std::size_t>(dim)));
      QPoint Q;
      Q.d = d;
      for (int j = 0; j < dim; ++j)
        Q[j] = u[j] * (d == 3 ? scale3[j] : scale4[j]);
      // skip the 1e-8 band around any predicate boundary
      double band = 1e-8;
      double lin = 1.0;
      for (int j = 0; j < dim; ++j) lin = std::min(lin, std::abs(Q[j]));
      double sum_res =
          d == 3 ? std::abs(1 - Q[0] - 3 * Q[1] - 2 * Q[2])
                 : std::abs(1 - Q[0] - 4 * (Q[1] + Q[2]) - 3 * Q[3]);
      double quad_res;
      if (d == 3) {
        quad_res = std::abs(3 * Q[1] + 2 * Q[0] * Q[2] - Q[0] * Q[0] -
                            3 * Q[1] * Q[0] -
                            (3 * Q[1] + Q[2]) * (3 * Q[1] + Q[2]));
      } else {
        double qa = std::abs(4 * Q[1] + 2 * Q[0] * Q[3] - Q[0] * Q[0] -
                             4 * Q[1] * Q[0] - Q[3] * Q[3] -
                             16 * Q[1] * (Q[1] + Q[2]) - 12 * Q[1] * Q[3]);
        double qb = std::abs(16 * Q[2] * Q[2] - (Q[0] - Q[3]) * (Q[0] - Q[3]));
        quad_res = std::min(qa, qb);
      }
      if (lin < band || sum_res < band || quad_res < band) continue;
      ++checked;
      Matrix rho = bell_mixture(hl_weights(Q));
      bool spec_density = min_eigenvalue(rho) >= -kPsdTol;
      bool spec_ppt =
          spec_density &&
          min_eigenvalue(partial_transpose(rho, d, d)) >= -kPsdTol;
      if (spec_density != density_region(Q)) ++density_bad;
      if (spec_ppt != (density_region(Q) && ppt_region(Q))) ++ppt_bad;
    }
    r.checks.push_back(flag_check(
        "d=" + std::to_string(d) + " predicates match spectra",
        density_bad == 0 && ppt_bad == 0,
        std::to_string(checked) + " points off-band, " +
            std::to_string(density_bad) + "/" + std::to_string(ppt_bad) +
            " density/ppt disagreements"));
  }

  // matrix-trace vs Q-form proportionality, kappa > 0 fixed per witness
  struct Named {
    std::string label;
    WitnessSpec w;
  };
  std::vector<Named> specs;
  for (double a : {0.0, 1.0 / 3.0, 0.5, 1.0})
    specs.push_back({"choi(a=" + fmt(a) + ")", choi_witness(a)});
  specs.push_back({"chrusc1", chrusc_witness(1)});
  specs.push_back({"chrusc2", chrusc_witness(2)});
  specs.push_back({"wabcd.c1(0.8)", wabcd_class1(0.8)});
  specs.push_back({"wabcd.c2(0.3)", wabcd_class2(0.3)});
  for (const auto& [label, w] : specs) {
    RobertsConfig cfg{w.d, 0.25, 7};
    double kappa = 0.0;
    double worst = 0.0;
    bool ok = true;
    for (std::uint64_t n = 0; n < 1000; ++n) {
      QPoint Q = sample_hl_Q(w.d, cfg, n);
      double tr = trace_pair(w.matrix->mat(), hl_density(Q).mat()).real();
      double qf = w.q_form->eval(Q);
      if (kappa == 0.0 && std::abs(qf) > 1e-3) kappa = tr / qf;
      if (kappa != 0.0) worst = std::max(worst, std::abs(tr - kappa * qf));
    }
    ok = kappa > 0 && worst <= 1e-10;
    r.checks.push_back(flag_check(
        label + " trace == kappa * q_form", ok,
        "kappa " + fmt(kappa) + ", worst residual " + fmt(worst)));
  }

  double vmin = witness_min_over_vertices(mub_torus_instance());
  r.checks.push_back(flag_check("correlation-basis witness vertex minimum >= 0",
                                vmin >= -1e-12, "min " + fmt(vmin)));
  return r;
}

CriterionResult criterion7(const ReproOptions& opt) {
  CriterionResult r;
  r.number = 7;
  r.title = "realignment probabilities, slow lane";
  EstimateOptions eo;
  eo.workers = opt.workers;
  std::vector<SampleTest> tests;
  tests.push_back({"ccnr", [](const SamplePoint& sp) { return sp.ccnr(); }});
  tests.push_back({"ccnr_and_ppt", [](const SamplePoint& sp) {
                     return ppt_region(sp.Q) && sp.ccnr();
                   }});
  EstimateTable e3 =
      estimate(Family::HL3, tests, RobertsConfig{3, 0.5, 0}, 1'000'000, eo);
  r.checks.push_back(abs_check("d3 realignment entanglement", row(e3, "ccnr"),
                               0.4460, 5e-3));
  r.checks.push_back(rel_check("d3 realignment bound",
                               row(e3, "ccnr_and_ppt"), 0.0189, 0.15));

  // The d=4 reference value 1/32 could not be reproduced: the family's
  // realignment fraction measures ~0.41 under every realignment convention
  // tried, while the d=3 and full-simplex values reproduce fine. The check
  // is implemented as stated and is expected to fail until the discrepancy
  // is resolved.
  EstimateTable e4 =
      estimate(Family::HL4, tests, RobertsConfig{4, 0.5, 0}, 1'000'000, eo);
  r.checks.push_back(rel_check("d4 realignment entanglement (quoted 1/32)",
                               row(e4, "ccnr"), 1.0 / 32.0, 0.10));
  return r;
}

CriterionResult criterion8(const ReproOptions& opt) {
  CriterionResult r;
  r.number = 8;
  r.title = "full simplices, scaled-down runs";
  EstimateOptions eo;
  eo.workers = opt.workers;
  const auto& cat = FormulaCatalog::instance();

  std::vector<SampleTest> t3;
  t3.push_back({"ppt", [](const SamplePoint& sp) { return sp.spectral_ppt(); }});
  t3.push_back({"ppt_and_mub", [](const SamplePoint& sp) {
                  return mub_I4_full(sp.weight_grid()) > 2.0 &&
                         sp.spectral_ppt();
                }});
  EstimateTable e3 =
      estimate(Family::Full3, t3, RobertsConfig{8, 0.5, 0}, 1'000'000, eo);
  r.checks.push_back(
      abs_check("full d=3 ppt", row(e3, "ppt"), 0.393390, 1.5e-3));
  double bm = row(e3, "ppt_and_mub");
  r.checks.push_back(flag_check("full d=3 mub bound in [5e-5, 2e-4]",
                                bm >= 5e-5 && bm <= 2e-4, fmt(bm)));

  std::vector<SampleTest> t4;
  t4.push_back({"ppt", [](const SamplePoint& sp) { return sp.spectral_ppt(); }});
  t4.push_back({"ccnr", [](const SamplePoint& sp) { return sp.ccnr(); }});
  EstimateTable e4 =
      estimate(Family::Full4, t4, RobertsConfig{15, 0.5, 0}, 1'000'000, eo);
  r.checks.push_back(abs_check("full d=4 ppt", row(e4, "ppt"),
                               cat.eval("full15.ppt.conj"), 2e-3));
  r.checks.push_back(
      abs_check("full d=4 realignment entanglement", row(e4, "ccnr"),
                0.55397, 5e-3));

  std::vector<SampleTest> tb;
  tb.push_back({"ccnr_and_ppt", [](const SamplePoint& sp) {
                  return sp.ccnr() && sp.spectral_ppt();
                }});
  EstimateTable eb =
      estimate(Family::Full4, tb, RobertsConfig{15, 0.5, 0}, 10'000'000, eo);
  r.checks.push_back(rel_check("full d=4 realignment bound (N=1e7)",
                               row(eb, "ccnr_and_ppt"), 0.0013346, 0.25));
  return r;
}

CriterionResult criterion9(const ReproOptions& opt) {
  CriterionResult r;
  r.number = 9;
  r.title = "sampler determinism, merge and convergence";
  EstimateOptions eo;
  eo.workers = opt.workers;
  const auto& cat = FormulaCatalog::instance();

  std::vector<SampleTest> tests;
  tests.push_back(q_test("ppt", [](const QPoint& Q) { return ppt_region(Q); }));

  RobertsConfig cfg{3, 0.5, 0};
  EstimateTable a = estimate(Family::HL3, tests, cfg, 200'000, eo);
  EstimateTable b = estimate(Family::HL3, tests, cfg, 200'000, eo);
  EstimateOptions eo1;
  eo1.workers = 1;
  EstimateTable c = estimate(Family::HL3, tests, cfg, 200'000, eo1);
  bool det = a.rows[0].hits == b.rows[0].hits &&
             a.rows[0].hits == c.rows[0].hits &&
             a.rows[0].estimate == c.rows[0].estimate;
  r.checks.push_back(flag_check("bitwise determinism across runs and worker "
                                "counts", det,
                                std::to_string(a.rows[0].hits) + " hits"));

  RobertsConfig half2 = cfg;
  half2.start_index = 100'000;
  EstimateTable p1 = estimate(Family::HL3, tests, cfg, 100'000, eo);
  EstimateTable p2 = estimate(Family::HL3, tests, half2, 100'000, eo);
  EstimateTable merged = merge(p1, p2);
  bool part = merged.rows[0].hits == a.rows[0].hits &&
              merged.rows[0].total == a.rows[0].total;
  r.checks.push_back(flag_check("partition-merge equality", part,
                                std::to_string(merged.rows[0].hits) + " vs " +
                                    std::to_string(a.rows[0].hits)));

  // convergence against the d=3 PPT closed form: the empirical order is the
  // log-log slope of the median error (over three offsets) fitted across
  // N = 1e4..1e7, and must be at least as steep as N^-0.7
  const double exact = cat.eval("d3.ppt");
  auto median_err = [&](std::uint64_t N) {
    std::vector<double> errs;
    for (double a0 : {0.0, 1.0 / 3.0, 0.5}) {
      EstimateTable t =
          estimate(Family::HL3, tests, RobertsConfig{3, a0, 0}, N, eo);
      errs.push_back(std::abs(t.rows[0].estimate - exact));
    }
    std::sort(errs.begin(), errs.end());
    return errs[1];
  };
  const std::vector<std::uint64_t> Ns = {10'000, 100'000, 1'000'000,
                                         10'000'000};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::string detail;
  for (std::uint64_t N : Ns) {
    double e = median_err(N);
    double x = std::log10(static_cast<double>(N)), y = std::log10(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    detail += "err(" + std::to_string(N) + ") " + fmt(e) + "  ";
  }
  const double n = static_cast<double>(Ns.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  r.checks.push_back(flag_check(
      "median-error slope between 1e4 and 1e7 is at most -0.7",
      slope <= -0.7, detail + "fitted slope " + fmt(slope)));
  return r;
}

CriterionResult criterion10(const ReproOptions& opt) {
  CriterionResult r;
  r.number = 10;
  r.title = "family-curve sampling of the d=3 LP witnesses";
  EstimateOptions eo;
  eo.workers = opt.workers;
  const auto& cat = FormulaCatalog::instance();

  std::vector<double> alphas = {0.5, 0.6, 2.0 / 3.0};
  std::vector<SampleTest> tests;
  for (double al : alphas) {
    tests.push_back(q_test("bound_w@" + fmt(al), [al](const QPoint& Q) {
      return ppt_region(Q) && jba3_predicates(al, Q).first;
    }));
    tests.push_back(q_test("bound_wp@" + fmt(al), [al](const QPoint& Q) {
      return ppt_region(Q) && jba3_predicates(al, Q).second;
    }));
    tests.push_back(q_test("joint@" + fmt(al), [al](const QPoint& Q) {
      auto [w, wp] = jba3_predicates(al, Q);
      return ppt_region(Q) && w && wp;
    }));
  }
  EstimateTable e = estimate(Family::HL3, tests, RobertsConfig{3, 0.5, 0},
                             10'000'000, eo);
  for (double al : alphas) {
    double exact = cat.eval("d3.jba.bound", al);
    r.checks.push_back(rel_check("bound via first witness, alpha=" + fmt(al),
                                 row(e, "bound_w@" + fmt(al)), exact, 0.10));
    r.checks.push_back(rel_check("bound via second witness, alpha=" + fmt(al),
                                 row(e, "bound_wp@" + fmt(al)), exact, 0.10));
  }
  std::uint64_t joint = row_hits(e, "joint@" + fmt(0.6));
  r.checks.push_back(flag_check("alpha=3/5 islands are disjoint (zero joint "
                                "hits)", joint == 0,
                                std::to_string(joint) + " joint hits"));
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const ReproOptions& opt) {
  std::vector<CriterionResult> out;
  auto want = [&](int k) { return opt.only.empty() || opt.only.count(k) > 0; };
  auto push = [&](CriterionResult r, Clock::time_point t0) {
    r.seconds = elapsed(t0);
    r.pass = true;
    for (const auto& c : r.checks) r.pass = r.pass && c.pass;
    if (opt.log) {
      std::ostringstream os;
      os << "criterion " << r.number << (r.pass ? " PASS " : " FAIL ")
         << r.title << " (" << fmt(r.seconds) << " s)";
      opt.log(os.str());
    }
    out.push_back(std::move(r));
  };

  Clock::time_point t0;
  if (want(1)) { t0 = Clock::now(); push(criterion1(), t0); }
  if (want(2)) { t0 = Clock::now(); push(criterion2(), t0); }
  if (want(3)) { t0 = Clock::now(); push(criterion3(), t0); }
  if (want(4)) { t0 = Clock::now(); push(criterion4(opt), t0); }
  if (want(5)) { t0 = Clock::now(); push(criterion5(opt), t0); }
  if (want(6)) { t0 = Clock::now(); push(criterion6(), t0); }
  if (want(7)) { t0 = Clock::now(); push(criterion7(opt), t0); }
  if (want(8)) { t0 = Clock::now(); push(criterion8(opt), t0); }
  if (want(9)) { t0 = Clock::now(); push(criterion9(opt), t0); }
  if (want(10)) { t0 = Clock::now(); push(criterion10(opt), t0); }
  return out;
}

std::string format_acceptance(const std::vector<CriterionResult>& results,
                              bool with_checks) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << "criterion " << r.number << " " << (r.pass ? "PASS" : "FAIL") << " "
       << r.title << " (" << fmt(r.seconds) << " s)\n";
    if (with_checks)
      for (const auto& c : r.checks)
        os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << ": "
           << c.detail << "\n";
  }
  return os.str();
}

}  // namespace bound_atlas
