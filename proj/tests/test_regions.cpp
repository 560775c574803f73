#include "bound_atlas/regions.hpp"

#include "bound_atlas/linalg.hpp"
#include "bound_atlas/sampler.hpp"
#include "bound_atlas/witnesses.hpp"

#include <doctest.h>

using namespace bound_atlas;

TEST_CASE("density region, d=3 and d=4") {
  CHECK(density_region(make_q3(1.0 / 9, 1.0 / 9, 1.0 / 9)));
  CHECK_FALSE(density_region(make_q3(0.5, 0.5, 0.5)));
  // boundary point (Q3 = 0) is admitted
  CHECK(density_region(horodecki_Q(2.0)));
  CHECK(density_region(make_q4(1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16)));
  CHECK_FALSE(density_region(make_q4(0.5, 0.2, 0.2, 0.2)));
  CHECK_THROWS_AS(density_region(QPoint{5, {}}), std::invalid_argument);
}

TEST_CASE("ppt region, d=3 and d=4") {
  CHECK(ppt_region(make_q3(1.0 / 9, 1.0 / 9, 1.0 / 9)));
  CHECK(ppt_region(make_q4(1.0 / 16, 1.0 / 16, 1.0 / 16, 1.0 / 16)));
  for (double lam : {1.0, 2.0, 3.0, 4.0}) CHECK(ppt_region(horodecki_Q(lam)));
  for (double lam : {0.5, 0.9, 4.1, 4.9})
    CHECK_FALSE(ppt_region(horodecki_Q(lam)));
}

TEST_CASE("expression parser") {
  RegionExpr e = RegionExpr::parse("ppt & (mub | !choi)");
  CHECK(e.atoms() == std::vector<std::string>{"ppt", "mub", "choi"});
  auto at = [](bool p, bool m, bool c) {
    return std::vector<bool>{p, m, c};
  };
  CHECK(e.eval_atoms(at(true, true, true)));
  CHECK(e.eval_atoms(at(true, false, false)));
  CHECK_FALSE(e.eval_atoms(at(true, false, true)));
  CHECK_FALSE(e.eval_atoms(at(false, true, true)));

  // precedence: ! binds tighter than &, & tighter than |
  RegionExpr p = RegionExpr::parse("a | b & !c");
  CHECK(p.eval_atoms({false, true, false}));
  CHECK_FALSE(p.eval_atoms({false, true, true}));

  CHECK_THROWS_AS(RegionExpr::parse("ppt &"), std::invalid_argument);
  CHECK_THROWS_AS(RegionExpr::parse("(ppt"), std::invalid_argument);
  CHECK_THROWS_AS(RegionExpr::parse("ppt mub"), std::invalid_argument);
}

TEST_CASE("standard registry") {
  const auto& reg = RegionRegistry::standard();
  QPoint mixed = make_q3(1.0 / 9, 1.0 / 9, 1.0 / 9);
  CHECK(reg.eval("d3.ppt", mixed));
  CHECK_FALSE(reg.eval("d3.mub", mixed));
  CHECK(reg.eval("d3.ppt_or_mub_and_choi", mixed));
  CHECK_THROWS_AS(reg.eval("nonsense", mixed), std::invalid_argument);

  // tautology evaluates true everywhere
  RegionExpr taut = RegionExpr::parse("ppt | !ppt");
  for (double lam : {0.2, 1.7, 3.3, 4.8})
    CHECK(reg.eval_expr(taut, horodecki_Q(lam)));

  // rows enumerate with stable order and serialize
  auto names = reg.expr_names(3);
  CHECK(names.size() == table1_rows().size());
  CHECK(names.front() == "d3.all");
  std::string j = reg.to_json();
  CHECK(j.find("\"d3.ppt_and_mub\": \"ppt & mub\"") != std::string::npos);
  CHECK(j.find("chrusc2") != std::string::npos);

  // unknown atom in an expression is rejected at registration
  RegionRegistry r2;
  r2.add_predicate("p", 3, [](const QPoint&) { return true; });
  CHECK_THROWS_AS(r2.add_expr("x", 3, "p & q"), std::invalid_argument);
}

TEST_CASE("predicates agree with the spectral checks off the boundary band") {
  // quick version of the acceptance property: 1e4 points per family
  for (int d : {3, 4}) {
    RobertsConfig cfg{d, 0.5, 0};
    double u[4];
    const double s3[3] = {1.0, 1.0 / 3.0, 0.5};
    const double s4[4] = {1.0, 0.25, 0.25, 1.0 / 3.0};
    int disagreements = 0;
    for (std::uint64_t n = 0; n < 10000; ++n) {
      roberts_point(cfg, n, std::span<double>(u, static_cast<std::size_t>(d)));
      QPoint Q;
      Q.d = d;
      for (int j = 0; j < d; ++j) Q[j] = u[j] * (d == 3 ? s3[j] : s4[j]);
      Matrix rho = bell_mixture(hl_weights(Q));
      bool sd = min_eigenvalue(rho) >= -kPsdTol;
      bool sp = sd && min_eigenvalue(partial_transpose(rho, d, d)) >= -kPsdTol;
      // skip points that are close to any face
      if (std::abs(min_eigenvalue(rho)) < 1e-8) continue;
      if (sd && std::abs(min_eigenvalue(partial_transpose(rho, d, d))) < 1e-8)
        continue;
      if (sd != density_region(Q)) ++disagreements;
      if (sp != (density_region(Q) && ppt_region(Q))) ++disagreements;
    }
    CHECK(disagreements == 0);
  }
}

TEST_CASE("ppt implies density on sampled points") {
  RobertsConfig cfg{3, 0.25, 0};
  for (std::uint64_t n = 0; n < 20000; ++n) {
    QPoint Q = sample_hl_Q(3, cfg, n);
    if (ppt_region(Q)) CHECK(density_region(Q));
  }
}

TEST_CASE("bound islands split at Q2 = 1/9") {
  RobertsConfig cfg{3, 0.5, 0};
  double max_mub_q2 = 0.0, min_choi_q2 = 1.0;
  for (std::uint64_t n = 0; n < 2'000'000; ++n) {
    QPoint Q = sample_hl_Q(3, cfg, n);
    if (!ppt_region(Q)) continue;
    if (mub_predicate_hl3(Q)) max_mub_q2 = std::max(max_mub_q2, Q[1]);
    if (choi_predicate_hl3(Q)) min_choi_q2 = std::min(min_choi_q2, Q[1]);
  }
  CHECK(max_mub_q2 < 1.0 / 9.0 + 1e-12);
  CHECK(min_choi_q2 > 1.0 / 9.0 - 1e-12);
}
