#include "bound_atlas/formulas.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bound_atlas {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt5 = std::sqrt(5.0);

double acsch(double x) { return std::asinh(1.0 / x); }

using Cx = std::complex<double>;

// ---- the one-parameter families ----

// Entanglement probability of the generalized Choi-map witness family.
double d3_choi_ent(double a) {
  return -std::pow(a - 2, 3) / (9 * a * a - 30 * a + 27);
}

// Bound probability of the same family.
double d3_choi_bound(double a) {
  if (a == 0.0) return 0.0;
  const double A = 8 * std::sqrt(12 - 9 * a) * (6 * a * a - 17 * a + 12) *
                   std::acos((a * (3 * a - 8) + 6) / (6 - 4 * a));
  const double B =
      3 * std::sqrt(a) *
      (2 * (9 * a * a * a - 57 * a * a + 108 * a - 64) +
       3 * (3 - 2 * a) * a * std::log(9 - 6 * a));
  return -(A + B) / (54 * std::pow(4 - 3 * a, 1.5) * (2 * a - 3));
}

double d3_jba_ent(double al) { return (1 - 3 * al) / (2 - 12 * al); }

// Bound probability of the d=3 linear-programming witness pair. The published
// expression involves csc^-1 and square roots whose arguments change sign
// inside the interval; evaluated over C with principal branches, the result
// is real (checked against the quoted values at alpha = 1/2 and 2/3).
double d3_jba_bound(double alpha) {
  const Cx al(alpha, 0.0);
  const Cx u = 6.0 * (1.0 - 3.0 * al) * al + 1.0;
  if (std::abs(u) < 1e-14)
    throw std::domain_error("d3.jba.bound: removable singularity at this alpha");
  const Cx pre = 1.0 / (162.0 * u * u);
  const Cx t1 = 8.0 * kSqrt3 * kPi * u * u;
  const Cx t2 =
      -18.0 * (3.0 * al - 1.0) * (15.0 * al + 2.0) * (6.0 * al * (3.0 * al - 1.0) - 1.0);
  const Cx acsc = std::asin(std::sqrt(u) / (3.0 * al + 1.0));
  const Cx t3 = -6.0 * std::sqrt(3.0 * u) * std::pow(3.0 * al + 1.0, 3) * acsc;
  return (pre * (t1 + t2 + t3)).real();
}

double d4_jba_ent(double al) { return (1 - 4 * al) / (2 - 16 * al); }
// union of the two constraints
double d4_jba_union(double al) { return (2 - 8 * al) / (3 - 24 * al); }
// intersection; equals 2*ent - union (the source renders the denominator
// with the opposite sign, which would make a probability negative)
double d4_jba_intersection(double al) { return (1 - 4 * al) / (3 * (1 - 8 * al)); }

// Bound probability of the d=4 pair; real for alpha > 1/4.
double d4_jba_bound(double al) {
  if (al <= 0.25)
    throw std::domain_error("d4.jba.bound: singular denominator at alpha <= 1/4");
  const double A = (-2 * al - 1) * (32 * al + 1) *
                   std::pow(16 * (1 - 5 * al) * al + 1, 2) *
                   std::sqrt(6 / (4 * al - 1) + 5);
  const double B = 27 * al * std::pow(8 * al + 1, 3) *
                   (16 * al * (10 * al + 1) + 1) *
                   std::acosh(12 * al / (8 * al + 1));
  const double C = -3 * std::pow(8 * al + 1, 4) * (2 * al * (80 * al + 23) + 1) *
                   std::acosh(std::sqrt((20 * al + 1) / (16 * al + 2)));
  return (A + B + C) /
         (32 * std::pow(4 * al - 1, 2.5) * std::pow(20 * al + 1, 3.5));
}

double d4_wabcd_c1_ent(double a) {
  return std::pow(a - 3, 4) /
         (2 * (a - 7) * (2 * a - 5) *
          (-2 * a + std::sqrt(std::max(0.0, -4 * (a - 2) * a - 3)) + 7));
}

double d4_wabcd_c2_ent(double a) {
  return -std::pow(a - 3, 4) * (a + std::sqrt(std::max(0.0, (1 - a) * a)) - 4) /
         (8 * (a - 7) * (a - 2) * (a * (2 * a - 9) + 16));
}

// ---- equal-weight mixtures with the fully mixed state ----

double hw3_ent(double al) {
  const double den = 162 * (1 - 3 * al) * (1 - 3 * al);
  if (al < 0 || 15 * al > 7) return std::pow(7 - 15 * al, 2) / den;
  if (al > 0 && al <= 1.0 / 6.0)
    return (3 * al * (411 * al - 254) + 113) / den;
  if (al > 1.0 / 6.0 && al < 11.0 / 39.0)
    return std::pow(11 - 39 * al, 2) / den;
  return 0.0;  // [11/39, 7/15]: both adjoining pieces vanish
}

double hw3_bound(double al) {
  const double den = 162 * (1 - 3 * al) * (1 - 3 * al);
  if (al <= 1.0 / 6.0) return (3 * al * (411 * al - 254) + 113) / den;
  return std::pow(11 - 39 * al, 2) / den;
}

double hw4_ent(double al) {
  const double den = 8192 * std::pow(4 * al - 1, 3);
  if (al < 0 || al > 13.0 / 40.0) return std::pow(40 * al - 13, 3) / den;
  if (al > 1.0 / 8.0 && al < 19.0 / 88.0)
    return std::pow(88 * al - 19, 3) / den;
  if (al > 0 && al <= 1.0 / 8.0)
    return (460288 * al * al * al - 330816 * al * al + 78024 * al - 5995) / den;
  return 0.0;  // [19/88, 13/40]
}

double hw4_bound(double al) {
  return (8 * al * (8 * al * (14600 * al - 9537) + 16599) - 9623) /
         (12288 * std::pow(4 * al - 1, 3));
}

double hw5_ent(double al) {
  const double den = 781250 * std::pow(5 * al - 1, 4);
  if (al < 0 || al > 21.0 / 85.0) return std::pow(85 * al - 21, 4) / den;
  if (al > 1.0 / 10.0 && al < 29.0 / 165.0)
    return std::pow(165 * al - 29, 4) / den;
  if (al > 0 && al <= 1.0 / 10.0)
    return (436080625 * std::pow(al, 4) - 339038500 * std::pow(al, 3) +
            98070150 * al * al - 12476260 * al + 586769) /
           den;
  return 0.0;  // [29/165, 21/85]
}

FormulaEntry nullary(std::string id, double value, std::string note,
                     bool catalog_only = false, bool provisional = false) {
  FormulaEntry e;
  e.id = std::move(id);
  e.arity = 0;
  e.value = value;
  e.note = std::move(note);
  e.catalog_only = catalog_only;
  e.provisional = provisional;
  return e;
}

FormulaEntry unary(std::string id, std::string param, double lo, double hi,
                   std::function<double(double)> fn, std::string note,
                   bool catalog_only = false) {
  FormulaEntry e;
  e.id = std::move(id);
  e.arity = 1;
  e.param = std::move(param);
  e.lo = lo;
  e.hi = hi;
  e.fn = std::move(fn);
  e.note = std::move(note);
  e.catalog_only = catalog_only;
  return e;
}

}  // namespace

FormulaCatalog::FormulaCatalog() {
  const double log3 = std::log(3.0);
  auto& E = entries_;

  // -- d=3 family: probability table over {PPT, MUB, Choi} --
  E.push_back(nullary("d3.all", 1.0, "whole family"));
  E.push_back(nullary("d3.ppt", 8 * kPi / (27 * kSqrt3), "PPT fraction, d=3 family"));
  E.push_back(nullary("d3.mub", 1.0 / 6.0, "MUB-flagged fraction"));
  E.push_back(nullary("d3.choi", 1.0 / 6.0, "Choi-flagged fraction"));
  const double pm = -4.0 / 9.0 + 4 * kPi / (27 * kSqrt3) + log3 / 6;
  E.push_back(nullary("d3.ppt_and_mub", pm, "bound fraction via MUB"));
  E.push_back(nullary("d3.ppt_and_choi", pm, "bound fraction via Choi"));
  E.push_back(nullary("d3.mub_and_choi", 1.0 / 9.0, "both tests flag"));
  E.push_back(nullary("d3.mub_or_choi", 2.0 / 9.0, "either test flags"));
  E.push_back(nullary("d3.not_mub_and_choi", 1.0 / 18.0, "Choi only"));
  E.push_back(nullary("d3.mub_and_not_choi", 1.0 / 18.0, "MUB only"));
  E.push_back(nullary("d3.ppt_and_not_mub",
                      (72 + 8 * kSqrt3 * kPi - 27 * log3) / 162.0,
                      "PPT, MUB quiet"));
  E.push_back(nullary("d3.ppt_and_not_choi",
                      (72 + 8 * kSqrt3 * kPi - 27 * log3) / 162.0,
                      "PPT, Choi quiet"));
  E.push_back(nullary("d3.ppt_and_mub_and_choi", 0.0,
                      "the two bound islands do not meet"));
  E.push_back(nullary("d3.ppt_and_mub_or_choi",
                      -8.0 / 9.0 + 8 * kPi / (27 * kSqrt3) + log3 / 3,
                      "PPT and at least one test"));
  const double npm = 1.0 / 3.0 + 22518 * kSqrt3 / 91 + 3888 * kSqrt3 / (7 * kPi) -
                     10939 * kPi / (27 * kSqrt3) - log3 / 8;
  E.push_back(nullary("d3.not_ppt_and_mub", npm, "free entanglement via MUB"));
  E.push_back(nullary("d3.not_ppt_and_choi", npm, "free entanglement via Choi"));
  E.push_back(nullary("d3.not_ppt_and_not_mub",
                      (9 * (7 + std::log(27.0)) - 8 * kSqrt3 * kPi) / 162.0,
                      "NPT, MUB quiet"));
  E.push_back(nullary("d3.not_ppt_and_not_choi",
                      (9 * (7 + std::log(27.0)) - 8 * kSqrt3 * kPi) / 162.0,
                      "NPT, Choi quiet"));
  E.push_back(nullary("d3.not_ppt_and_not_mub_and_not_choi",
                      (3 * log3 - 1) / 9.0, "NPT, both quiet"));
  E.push_back(nullary("d3.ppt_and_not_mub_and_not_choi",
                      (8 - 3 * log3) / 9.0, "PPT, both quiet"));
  E.push_back(nullary("d3.ppt_or_mub_and_choi",
                      (9 + 8 * kSqrt3 * kPi) / 81.0, "PPT or both tests"));

  // -- d=3 witness families --
  E.push_back(unary("d3.choi.ent", "a", 0.0, 1.0, d3_choi_ent,
                    "entanglement fraction, generalized Choi witness"));
  E.push_back(unary("d3.choi.bound", "a", 0.0, 1.0, d3_choi_bound,
                    "bound fraction, generalized Choi witness"));
  E.push_back(unary("d3.jba.ent", "alpha", 1.0 / 3.0, 2.0 / 3.0, d3_jba_ent,
                    "entanglement fraction, d=3 LP witness pair"));
  E.push_back(unary("d3.jba.bound", "alpha", 1.0 / 3.0, 2.0 / 3.0,
                    d3_jba_bound, "bound fraction, d=3 LP witness pair"));
  E.push_back(nullary(
      "d3.jba.limit",
      (-90 + 16 * kSqrt3 * kPi + 3 * std::sqrt(6.0) * std::asinh(std::sqrt(2.0))) /
          324.0,
      "large-alpha limit of d3.jba.bound (likely not attainable)", true));

  // -- embedded one-parameter line --
  E.push_back(nullary("d3.horodecki.ppt", 3.0 / 5.0, "PPT fraction on the line"));
  E.push_back(nullary("d3.horodecki.ent", 3.0 / 5.0,
                      "entangled fraction on the line", true));
  E.push_back(nullary("d3.horodecki.bound", 1.0 / 5.0,
                      "bound fraction on the line"));

  // -- realignment estimates, d=3 family --
  E.push_back(nullary("d3.ccnr.ent", 0.445977184637177,
                      "realignment-flagged fraction (numeric estimate)"));
  E.push_back(nullary("d3.ccnr.bound", 0.0189035154692955,
                      "realignment bound fraction (numeric estimate)"));

  // -- d=4 family --
  E.push_back(nullary("d4.ppt", 0.5 + std::log(2 - kSqrt3) / (8 * kSqrt3),
                      "PPT fraction, d=4 family"));
  E.push_back(nullary("d4.chrusc1.ent", 2.0 / 9.0,
                      "entanglement fraction, two-ququart witness 1"));
  E.push_back(nullary("d4.chrusc2.ent", 1.0 / 8.0,
                      "entanglement fraction, two-ququart witness 2"));
  E.push_back(nullary("d4.chrusc1.bound", 8 * std::log(2.0) / 27 - 59.0 / 288.0,
                      "bound fraction, two-ququart witness 1"));
  E.push_back(nullary("d4.chrusc2.bound",
                      24 * acsch(8 / std::sqrt(17.0)) / (17 * std::sqrt(17.0)) -
                          91.0 / 544.0,
                      "bound fraction, two-ququart witness 2"));
  E.push_back(nullary("d4.chrusc.joint",
                      -571.0 / 2448.0 + 5 * std::log(2.0) / 54 +
                          24 * acsch(8 / std::sqrt(17.0)) / (17 * std::sqrt(17.0)),
                      "bound fraction, both two-ququart witnesses"));
  E.push_back(unary("d4.wabcd.c1.ent", "a", 0.5, 1.5, d4_wabcd_c1_ent,
                    "entanglement fraction, 16x16 witness class I", true));
  E.push_back(unary("d4.wabcd.c2.ent", "a", 0.0, 1.0, d4_wabcd_c2_ent,
                    "entanglement fraction, 16x16 witness class II", true));
  E.push_back(nullary("d4.wabcd.both_at_half", 512.0 / 4125.0,
                      "classes I and II both flag, a=1/2", true));
  E.push_back(nullary("d4.wabcd.either_at_half", 512.0 / 3135.0,
                      "classes I or II flag, a=1/2", true));
  E.push_back(nullary("d4.wabcd.both_at_one", 2.0 / 16335.0,
                      "classes I and II both flag, a=1", true));
  E.push_back(nullary("d4.wabcd.either_at_one", 32.0 / 165.0,
                      "classes I or II flag, a=1", true));
  E.push_back(nullary("d4.w4.ent", 8.0 / 25.0,
                      "entanglement fraction of an external 16x16 witness",
                      true));
  E.push_back(unary("d4.jba.ent", "alpha", 0.25, 1.0 / 3.0, d4_jba_ent,
                    "entanglement fraction, d=4 LP witness pair"));
  E.push_back(unary("d4.jba.intersection", "alpha", 0.25, 1.0 / 3.0,
                    d4_jba_intersection,
                    "both LP constraints hold (sign normalized)"));
  E.push_back(unary("d4.jba.union", "alpha", 0.25, 1.0 / 3.0, d4_jba_union,
                    "at least one LP constraint holds"));
  E.push_back(unary("d4.jba.bound", "alpha", 0.25, 1.0 / 3.0, d4_jba_bound,
                    "bound fraction, d=4 LP witness pair"));
  E.push_back(nullary(
      "d4.jba.limit",
      -(5 * kSqrt5 + std::log(8.0) - 27 * std::log(3 + kSqrt5) +
        24 * (std::log(2.0) + acsch(2.0))) /
          (200 * kSqrt5),
      "large-alpha limit of d4.jba.bound (likely not attainable)", true));
  E.push_back(nullary("d4.ccnr.ent", 1.0 / 32.0,
                      "realignment-flagged fraction, d=4 family", false, true));
  E.push_back(nullary("d4.ccnr.bound", 0.01265489845176,
                      "realignment bound fraction, d=4 family (numeric)", false,
                      true));

  // -- full simplices --
  E.push_back(nullary("full8.ppt.conj", 7 * kPi / (25 * kSqrt5),
                      "conjectured PPT fraction, full 8-dim simplex"));
  E.push_back(nullary("full8.mub_ppt.est", 0.00011335,
                      "bound fraction via the full-grid MUB test (estimate)"));
  E.push_back(nullary("full15.ppt.conj",
                      1.0 / 8.0 + std::log(3 - kSqrt5) / (13 * kSqrt5),
                      "conjectured PPT fraction, full 15-dim simplex"));
  E.push_back(nullary("full15.ccnr.ent.est", 0.55397,
                      "realignment-flagged fraction, full 15-dim simplex "
                      "(estimate)"));
  E.push_back(nullary("full15.ccnr.bound.conj", 1.0 / 750.0,
                      "conjectured realignment bound fraction, 15-dim simplex"));

  // -- generalized one-parameter-state constructions (catalog only; the
  //    state construction lives in an external reference) --
  E.push_back(nullary("gh3.ppt", (4 * kSqrt3 * kPi - 9) / 27.0,
                      "PPT fraction, generalized two-qutrit states", true));
  E.push_back(nullary("gh3.ent", 0.5,
                      "entanglement fraction, generalized two-qutrit states",
                      true));
  E.push_back(nullary("gh3.bound", (2 * kSqrt3 * kPi - 9) / 27.0,
                      "bound fraction, generalized two-qutrit states", true));
  E.push_back(nullary("gh4.ppt", 1.0 / 3.0,
                      "PPT fraction, generalized two-ququart states", true));
  E.push_back(nullary("gh4.ent", 0.5, "entanglement fraction, generalized "
                      "two-ququart states", true));
  E.push_back(nullary("gh4.bound", 1.0 / 24.0,
                      "bound fraction, generalized two-ququart states", true));
  E.push_back(nullary("gh5.ppt", 0.33734924124312192527,
                      "PPT fraction, generalized two-ququint states (numeric)",
                      true));
  E.push_back(nullary("gh5.ent", 0.5, "entanglement fraction, generalized "
                      "two-ququint states", true));
  E.push_back(nullary("gh5.bound", 0.0370662,
                      "bound fraction, generalized two-ququint states "
                      "(numeric)", true));

  // -- equal-weight mixtures with the fully mixed state (catalog only) --
  E.push_back(nullary(
      "hw3.ppt",
      (-66 + 21 * std::sqrt(17.0) +
       50 * kSqrt3 *
           std::asin(std::sqrt(1.5 * (417 - 7 * std::sqrt(17.0))) / 50)) /
          81.0,
      "PPT fraction, two-qutrit equal-weight mixture", true));
  E.push_back(unary("hw3.ent", "alpha", 0.0, 11.0 / 39.0, hw3_ent,
                    "entanglement fraction, two-qutrit equal-weight mixture",
                    true));
  E.push_back(unary("hw3.bound", "alpha", (71 - 6 * std::sqrt(17.0)) / 309.0,
                    11.0 / 39.0, hw3_bound,
                    "bound fraction, two-qutrit equal-weight mixture", true));
  E.push_back(nullary("hw4.ppt", 437.0 / 192.0 - 7 * std::sqrt(7.0) / 12,
                      "PPT fraction, two-ququart equal-weight mixture", true));
  E.push_back(unary("hw4.ent", "alpha", 0.0, 19.0 / 88.0, hw4_ent,
                    "entanglement fraction, two-ququart equal-weight mixture",
                    true));
  E.push_back(unary("hw4.bound", "alpha", (161 - 18 * std::sqrt(7.0)) / 872.0,
                    11.0 / 56.0, hw4_bound,
                    "bound fraction, two-ququart equal-weight mixture", true));
  E.push_back(nullary("hw5.ppt", 0.758301,
                      "PPT fraction, two-ququint equal-weight mixture "
                      "(numeric)", true));
  E.push_back(unary("hw5.ent", "alpha", 0.0, 29.0 / 165.0, hw5_ent,
                    "entanglement fraction, two-ququint equal-weight mixture",
                    true));
  E.push_back(nullary("hw5.bound_at_sixth", 6561.0 / 781250.0,
                      "two-ququint bound fraction at alpha=1/6", true));
  E.push_back(nullary(
      "hw5.bound_jump",
      0.0119320240085435 + 8.0 / 625.0 +
          (2008781 - 157760 * std::sqrt(145.0)) / 1953125.0 +
          72 * (696 * std::sqrt(145.0) - 7925) / 390625.0,
      "two-ququint bound fraction just above the alpha=1/7 jump", true));
}

const FormulaCatalog& FormulaCatalog::instance() {
  static const FormulaCatalog cat;
  return cat;
}

const FormulaEntry* FormulaCatalog::find(const std::string& id) const {
  for (const auto& e : entries_)
    if (e.id == id) return &e;
  return nullptr;
}

const FormulaEntry& FormulaCatalog::at(const std::string& id) const {
  const FormulaEntry* e = find(id);
  if (!e) throw std::invalid_argument("FormulaCatalog: unknown id '" + id + "'");
  return *e;
}

double FormulaCatalog::eval(const std::string& id, std::optional<double> param,
                            bool extrapolate) const {
  const FormulaEntry& e = at(id);
  if (e.arity == 0) {
    if (param)
      throw std::invalid_argument("FormulaCatalog: '" + id +
                                  "' takes no parameter");
    return e.value;
  }
  if (!param)
    throw std::invalid_argument("FormulaCatalog: '" + id +
                                "' needs parameter " + e.param);
  const double x = *param;
  if ((x < e.lo || x > e.hi) && !extrapolate)
    throw std::domain_error("FormulaCatalog: '" + id + "' evaluated outside [" +
                            std::to_string(e.lo) + ", " + std::to_string(e.hi) +
                            "] without extrapolate");
  double v = e.fn(x);
  if (!std::isfinite(v))
    throw std::domain_error("FormulaCatalog: '" + id +
                            "' is singular at this parameter");
  return v;
}

std::string FormulaCatalog::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\n  \"formulas\": [\n";
  bool first = true;
  for (const auto& e : entries_) {
    if (!first) os << ",\n";
    first = false;
    os << "    {\"id\": \"" << e.id << "\", \"arity\": " << e.arity;
    if (e.arity == 1)
      os << ", \"param\": \"" << e.param << "\", \"domain\": [" << e.lo << ", "
         << e.hi << "]";
    os << ", \"note\": \"" << e.note << "\"";
    if (e.catalog_only) os << ", \"catalog_only\": true";
    if (e.provisional) os << ", \"provisional\": true";
    if (e.arity == 0) {
      os << ", \"value\": " << e.value;
    } else {
      // skip sample points where the expression is singular
      os << ", \"samples\": [";
      bool first_sample = true;
      for (double x : {e.lo, 0.5 * (e.lo + e.hi), e.hi}) {
        try {
          double v = e.fn(x);
          if (!std::isfinite(v)) continue;
          os << (first_sample ? "" : ", ") << "[" << x << ", " << v << "]";
          first_sample = false;
        } catch (const std::exception&) {
        }
      }
      os << "]";
    }
    os << "}";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

double eval_formula(const std::string& id, std::optional<double> param,
                    bool extrapolate) {
  return FormulaCatalog::instance().eval(id, param, extrapolate);
}

std::pair<double, double> choi_bound_peak() {
  // coarse bracket, then golden-section refinement
  double best_x = 0.5, best_v = -1.0;
  for (int i = 1; i <= 400; ++i) {
    double x = i / 400.0;
    double v = d3_choi_bound(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  double lo = std::max(0.0025, best_x - 1.0 / 400.0);
  double hi = std::min(1.0, best_x + 1.0 / 400.0);
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = d3_choi_bound(c), fd = d3_choi_bound(d);
  while (hi - lo > 1e-11) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = d3_choi_bound(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = d3_choi_bound(d);
    }
  }
  double x = 0.5 * (lo + hi);
  return {x, d3_choi_bound(x)};
}

std::vector<IdentityCheck> formula_identities() {
  auto check = [](std::string name, double lhs, double rhs, double tol) {
    IdentityCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.tol = tol;
    c.ok = std::abs(lhs - rhs) <= tol;
    return c;
  };
  const auto& cat = FormulaCatalog::instance();
  std::vector<IdentityCheck> out;
  out.push_back(check("d3.choi.bound(1) == d3.ppt_and_mub",
                      cat.eval("d3.choi.bound", 1.0), cat.eval("d3.ppt_and_mub"),
                      1e-12));
  out.push_back(check("d3.jba.bound(2/3) == d3.ppt_and_mub",
                      cat.eval("d3.jba.bound", 2.0 / 3.0),
                      cat.eval("d3.ppt_and_mub"), 1e-9));
  out.push_back(check("d3.jba.bound(1/2) == 0.00470668",
                      cat.eval("d3.jba.bound", 0.5),
                      (-342 + 16 * kSqrt3 * kPi +
                       375 * std::sqrt(6.0) * acsch(5 / std::sqrt(2.0))) /
                          324.0,
                      1e-9));
  out.push_back(check("d4.jba.bound(3/8) == d4.chrusc2.bound",
                      cat.eval("d4.jba.bound", 0.375, true),
                      cat.eval("d4.chrusc2.bound"), 1e-9));
  out.push_back(check(
      "d4.jba.bound(1/3) == quoted acosh form",
      cat.eval("d4.jba.bound", 1.0 / 3.0),
      (-92575 + 7798329 * std::acosh(12.0 / 11.0) / std::sqrt(23.0) -
       13484361 * std::acosh(std::sqrt(23.0 / 22.0)) / std::sqrt(23.0)) /
          389344.0,
      1e-12));
  out.push_back(check("d4.chrusc2.bound / d4.chrusc1.bound == 4.24019",
                      cat.eval("d4.chrusc2.bound") / cat.eval("d4.chrusc1.bound"),
                      4.24019, 1e-4));
  auto [argmax, peak] = choi_bound_peak();
  out.push_back(check("argmax d3.choi.bound == 0.8509958326", argmax,
                      0.8509958326, 1e-5));
  out.push_back(check("peak d3.choi.bound == 0.0082381739", peak, 0.0082381739,
                      1e-6));
  out.push_back(check("d3.choi.ent(0) == 8/27", cat.eval("d3.choi.ent", 0.0),
                      8.0 / 27.0, 1e-12));
  out.push_back(check("d3.choi.ent(1/3) == 125/486",
                      cat.eval("d3.choi.ent", 1.0 / 3.0), 125.0 / 486.0, 1e-12));
  const double golden_a = (3 - kSqrt5) / 4;
  out.push_back(check("d3.choi.ent((3-sqrt5)/4) == 5(5+sqrt5)/132",
                      cat.eval("d3.choi.ent", golden_a),
                      5 * (5 + kSqrt5) / 132.0, 1e-12));
  out.push_back(check("d3.choi.bound((3-sqrt5)/4) == 0.00149772192",
                      cat.eval("d3.choi.bound", golden_a), 0.00149772192,
                      1e-9));
  out.push_back(check("d3.choi.bound(1/3) == 0.00325612294236",
                      cat.eval("d3.choi.bound", 1.0 / 3.0), 0.00325612294236,
                      1e-11));
  out.push_back(check("d4.wabcd.c1.ent(1/2) == 625/4992",
                      cat.eval("d4.wabcd.c1.ent", 0.5), 625.0 / 4992.0, 1e-12));
  out.push_back(check("d4.wabcd.c2.ent(1/2) == 625/4992",
                      cat.eval("d4.wabcd.c2.ent", 0.5), 625.0 / 4992.0, 1e-12));
  out.push_back(check("d4.wabcd.c1.ent(1) == 2/27",
                      cat.eval("d4.wabcd.c1.ent", 1.0), 2.0 / 27.0, 1e-12));
  out.push_back(check("d4.wabcd.c2.ent(1) == 1/9",
                      cat.eval("d4.wabcd.c2.ent", 1.0), 1.0 / 9.0, 1e-12));
  out.push_back(check("d4.wabcd.c2.ent(0) == 81/448",
                      cat.eval("d4.wabcd.c2.ent", 0.0), 81.0 / 448.0, 1e-12));
  out.push_back(check("d4.jba: 2 ent - union == intersection",
                      2 * cat.eval("d4.jba.ent", 0.3) -
                          cat.eval("d4.jba.union", 0.3),
                      cat.eval("d4.jba.intersection", 0.3), 1e-14));
  out.push_back(check("hw4.ent continuous at 19/88",
                      hw4_ent(19.0 / 88.0 - 1e-13), hw4_ent(19.0 / 88.0 + 1e-13),
                      1e-10));
  out.push_back(check("hw3.ent continuous at 1/6", hw3_ent(1.0 / 6.0),
                      hw3_ent(1.0 / 6.0 + 1e-13), 1e-10));
  out.push_back(check("hw5.ent continuous at 1/10", hw5_ent(0.1),
                      hw5_ent(0.1 + 1e-13), 1e-10));
  return out;
}

double quad_bound_choi(double a, double abs_err) {
  if (a <= 0.0 || a > 1.0)
    throw std::domain_error("quad_bound_choi: a must lie in (0,1]");
  using boost::math::quadrature::gauss_kronrod;

  // width of the admissible Q2 interval at fixed (Q1,Q3)
  auto width = [a](double q1, double q3) {
    double f1 = -3 * q1 * q1 + 12 * q3 * q1 - 2 * q1 - 4 * q3 + 1;
    double t = (a - 2) * (3 * q1 - 1) + 6 * a * q3;
    double f2 = -t * t / (a * (3 * a - 4));
    if (f1 < 0) f1 = 0;
    if (f2 < 0) f2 = 0;
    double w = (std::sqrt(f1) - std::sqrt(f2)) / 6.0;
    return w > 0 ? w : 0.0;
  };
  auto q3_upper = [a](double q1) {
    double t = (3 * a - 4) * (3 * q1 - 1) * (3 * (3 * a - 4) * q1 + 4) / (a * a);
    if (t < 0) t = 0;
    return (a * (std::sqrt(t) + 3) + (15 - 9 * a) * q1 - 5) / (9 * a);
  };

  const double q1_lo = (-a * a + 2 * a - 1) / (2 * a - 3);
  const double q1_hi = 1.0 / 3.0;
  auto outer = [&](double q1) {
    double hi = q3_upper(q1);
    if (hi <= 0) return 0.0;
    auto inner = [&](double q3) { return width(q1, q3); };
    return gauss_kronrod<double, 31>::integrate(inner, 0.0, hi, 10,
                                                abs_err * 1e-3);
  };
  double v = gauss_kronrod<double, 31>::integrate(outer, q1_lo, q1_hi, 10,
                                                  abs_err * 1e-2);
  return 36.0 * v;
}

}  // namespace bound_atlas
