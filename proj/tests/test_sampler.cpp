#include "bound_atlas/sampler.hpp"

#include "bound_atlas/formulas.hpp"
#include "bound_atlas/regions.hpp"
#include "bound_atlas/witnesses.hpp"

#include <doctest.h>

#include <random>

using namespace bound_atlas;

TEST_CASE("recurrence roots and generators") {
  CHECK(roberts_root(1) == doctest::Approx(1.6180339887498949).epsilon(1e-14));
  // dim=1 generator is 1/phi
  RobertsConfig cfg1{1, 0.0, 0};
  double x = 0;
  roberts_point(cfg1, 0, std::span<double>(&x, 1));
  CHECK(x == doctest::Approx(0.6180339887).epsilon(1e-9));

  // dim=2 generator from the root of x^3 = x + 1
  RobertsConfig cfg2{2, 0.0, 0};
  double g[2];
  roberts_point(cfg2, 0, std::span<double>(g, 2));
  CHECK(g[0] == doctest::Approx(0.7548776662).epsilon(1e-9));
  CHECK(g[1] == doctest::Approx(0.5698402910).epsilon(1e-9));

  // alpha0 offsets every component
  RobertsConfig half{2, 0.5, 0};
  double h[2];
  roberts_point(half, 0, std::span<double>(h, 2));
  CHECK(h[0] == doctest::Approx(std::fmod(0.5 + 0.7548776662, 1.0)).epsilon(1e-9));
  CHECK(h[1] == doctest::Approx(std::fmod(0.5 + 0.5698402910, 1.0)).epsilon(1e-9));

  // points stay inside the unit cube
  RobertsConfig cfg{15, 0.5, 12345};
  double u[15];
  for (std::uint64_t n = 0; n < 1000; ++n) {
    roberts_point(cfg, n, std::span<double>(u, 15));
    for (double v : u) {
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }
}

TEST_CASE("sorted-spacings simplex map") {
  double u[2] = {0.7, 0.3}, v[2];
  cube_to_simplex(std::span<const double>(u, 2), std::span<double>(v, 2));
  CHECK(v[0] == doctest::Approx(0.3));
  CHECK(v[1] == doctest::Approx(0.4));

  double z[3] = {0, 0, 0}, vz[3];
  cube_to_simplex(std::span<const double>(z, 3), std::span<double>(vz, 3));
  for (double a : vz) CHECK(a == 0.0);

  // outputs are nonnegative and sum to at most 1
  RobertsConfig cfg{8, 0.5, 0};
  double w[8], s[8];
  for (std::uint64_t n = 0; n < 2000; ++n) {
    roberts_point(cfg, n, std::span<double>(w, 8));
    cube_to_simplex(std::span<const double>(w, 8), std::span<double>(s, 8));
    double sum = 0;
    for (double a : s) {
      CHECK(a >= 0.0);
      sum += a;
    }
    CHECK(sum <= 1.0 + 1e-15);
  }

  // coordinate means match the flat-simplex oracle 1/(k+1) within 3 sigma
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int k = 3;
  const std::size_t N = 1'000'000;
  double mean[k] = {0, 0, 0};
  double uu[k], vv[k];
  for (std::size_t i = 0; i < N; ++i) {
    for (int j = 0; j < k; ++j) uu[j] = uni(rng);
    cube_to_simplex(std::span<const double>(uu, k), std::span<double>(vv, k));
    for (int j = 0; j < k; ++j) mean[j] += vv[j];
  }
  // flat-simplex coordinate variance: k/((k+1)^2(k+2)) = 3/80
  const double sigma = std::sqrt(3.0 / 80.0 / static_cast<double>(N));
  for (int j = 0; j < k; ++j) {
    mean[j] /= static_cast<double>(N);
    CHECK(std::abs(mean[j] - 0.25) < 3 * sigma);
  }
}

TEST_CASE("family samples stay inside the density region") {
  for (int d : {3, 4}) {
    RobertsConfig cfg{d, 0.5, 0};
    for (std::uint64_t n = 0; n < 100'000; ++n) {
      QPoint Q = sample_hl_Q(d, cfg, n);
      CHECK(density_region(Q));
    }
  }
}

TEST_CASE("box fraction cross-checks the region volume normalizer") {
  // the d=3 region has volume 1/36 inside the box of volume 1/6, the d=4
  // region 1/1152 inside the box of volume 1/48
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int N = 400'000;
  int in3 = 0, in4 = 0;
  for (int i = 0; i < N; ++i) {
    QPoint q3 = make_q3(u(rng), u(rng) / 3, u(rng) / 2);
    if (density_region(q3)) ++in3;
    QPoint q4 = make_q4(u(rng), u(rng) / 4, u(rng) / 4, u(rng) / 3);
    if (density_region(q4)) ++in4;
  }
  const double f3 = static_cast<double>(in3) / N;
  const double f4 = static_cast<double>(in4) / N;
  const double s3 = std::sqrt((1.0 / 6) * (5.0 / 6) / N);
  const double s4 = std::sqrt((1.0 / 24) * (23.0 / 24) / N);
  CHECK(std::abs(f3 - 1.0 / 6.0) < 4 * s3);
  CHECK(std::abs(f4 - 1.0 / 24.0) < 4 * s4);
}

TEST_CASE("full-simplex weights are a distribution") {
  for (int d : {3, 4}) {
    RobertsConfig cfg{d * d - 1, 0.25, 0};
    for (std::uint64_t n = 0; n < 20'000; ++n) {
      SimplexWeights w = sample_full_c(d, cfg, n);
      double sum = 0;
      for (int i = 0; i < w.count(); ++i) {
        CHECK(w.c[static_cast<std::size_t>(i)] >= 0.0);
        sum += w.c[static_cast<std::size_t>(i)];
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("estimate: determinism and merge") {
  std::vector<SampleTest> tests;
  tests.push_back({"ppt", [](const SamplePoint& sp) {
                     return ppt_region(sp.Q);
                   }});
  RobertsConfig cfg{3, 0.5, 0};

  EstimateOptions one;
  one.workers = 1;
  EstimateOptions two;
  two.workers = 2;
  EstimateTable a = estimate(Family::HL3, tests, cfg, 150'000, one);
  EstimateTable b = estimate(Family::HL3, tests, cfg, 150'000, two);
  CHECK(a.rows[0].hits == b.rows[0].hits);
  CHECK(a.rows[0].estimate == b.rows[0].estimate);

  RobertsConfig second = cfg;
  second.start_index = 75'000;
  EstimateTable p1 = estimate(Family::HL3, tests, cfg, 75'000, two);
  EstimateTable p2 = estimate(Family::HL3, tests, second, 75'000, two);
  EstimateTable merged = merge(p1, p2);
  CHECK(merged.rows[0].hits == a.rows[0].hits);
  CHECK(merged.n_samples == a.n_samples);

  CHECK_THROWS_AS(estimate(Family::HL3, tests, cfg, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate(Family::HL3, {}, cfg, 10), std::invalid_argument);
}

TEST_CASE("estimate: d=3 PPT fraction approaches the closed form") {
  std::vector<SampleTest> tests;
  tests.push_back({"ppt", [](const SamplePoint& sp) {
                     return ppt_region(sp.Q);
                   }});
  EstimateTable t =
      estimate(Family::HL3, tests, RobertsConfig{3, 0.5, 0}, 1'000'000);
  CHECK(std::abs(t.rows[0].estimate - eval_formula("d3.ppt")) < 1e-3);
}

TEST_CASE("estimate: line family") {
  std::vector<SampleTest> tests;
  tests.push_back({"ppt", [](const SamplePoint& sp) {
                     return ppt_region(sp.Q);
                   }});
  tests.push_back({"lambda_range", [](const SamplePoint& sp) {
                     return sp.lambda >= 0.0 && sp.lambda <= 5.0;
                   }});
  EstimateTable t = estimate(Family::HorodeckiLine, tests,
                             RobertsConfig{1, 0.5, 0}, 200'000);
  CHECK(t.rows[1].hits == t.rows[1].total);
  CHECK(std::abs(t.rows[0].estimate - 0.6) < 2e-3);
}

TEST_CASE("progress stream fires at the requested stride") {
  std::vector<SampleTest> tests;
  tests.push_back({"all", [](const SamplePoint&) { return true; }});
  std::vector<std::uint64_t> marks;
  EstimateOptions eo;
  eo.workers = 2;
  eo.progress_stride = 100'000;
  eo.on_progress = [&](const ProgressEntry& p) { marks.push_back(p.done); };
  estimate(Family::HL3, tests, RobertsConfig{3, 0.0, 0}, 300'000, eo);
  CHECK(marks.size() >= 3);
  CHECK(marks.back() == 300'000);
  for (std::size_t i = 1; i < marks.size(); ++i) CHECK(marks[i] > marks[i - 1]);
}

TEST_CASE("slow-lane cached views") {
  SamplePoint sp = make_sample(Family::Full3, RobertsConfig{8, 0.5, 0}, 17);
  CHECK(sp.has_weights);
  CHECK(std::abs(sp.density().trace().real() - 1.0) < 1e-12);
  bool p1 = sp.spectral_ppt();
  bool p2 = sp.spectral_ppt();
  CHECK(p1 == p2);
  (void)sp.ccnr();

  SamplePoint hl = make_sample(Family::HL3, RobertsConfig{3, 0.5, 0}, 17);
  const SimplexWeights& w = hl.weight_grid();
  CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("table serialization") {
  std::vector<SampleTest> tests;
  tests.push_back({"ppt", [](const SamplePoint& sp) {
                     return ppt_region(sp.Q);
                   }});
  EstimateTable t =
      estimate(Family::HL3, tests, RobertsConfig{3, 0.5, 0}, 10'000);
  std::string csv = t.to_csv();
  CHECK(csv.find("region,hits,total,estimate") != std::string::npos);
  CHECK(csv.find("ppt,") != std::string::npos);
  std::string j = t.to_json();
  CHECK(j.find("\"family\": \"hl3\"") != std::string::npos);
  CHECK(j.find("\"n_samples\": 10000") != std::string::npos);
}

TEST_CASE("threshold endpoints: the witness saturates and vanishes") {
  // at bound 43/32 the constraint has no effect inside the PPT body; at
  // -3/16 it excludes everything
  WitnessSpec w = choi_witness(1.0);
  std::vector<SampleTest> tests;
  tests.push_back({"ppt", [](const SamplePoint& sp) {
                     return ppt_region(sp.Q);
                   }});
  tests.push_back({"loose", [w](const SamplePoint& sp) {
                     return ppt_region(sp.Q) &&
                            w.q_form->eval(sp.Q) < 43.0 / 32.0;
                   }});
  tests.push_back({"tight", [w](const SamplePoint& sp) {
                     return ppt_region(sp.Q) &&
                            w.q_form->eval(sp.Q) < -3.0 / 16.0;
                   }});
  EstimateTable t =
      estimate(Family::HL3, tests, RobertsConfig{3, 0.5, 0}, 500'000);
  CHECK(t.rows[1].hits == t.rows[0].hits);
  CHECK(t.rows[2].hits == 0);
}

TEST_CASE("worker default comes from the environment") {
  setenv("BOUND_ATLAS_THREADS", "3", 1);
  CHECK(default_worker_count() == 3);
  unsetenv("BOUND_ATLAS_THREADS");
  CHECK(default_worker_count() >= 1);
}

TEST_CASE("two-offset agreement on the d=3 PPT fraction") {
  std::vector<SampleTest> tests;
  tests.push_back({"ppt", [](const SamplePoint& sp) {
                     return ppt_region(sp.Q);
                   }});
  EstimateTable a =
      estimate(Family::HL3, tests, RobertsConfig{3, 0.0, 0}, 500'000);
  EstimateTable b =
      estimate(Family::HL3, tests, RobertsConfig{3, 0.5, 0}, 500'000);
  double exact = eval_formula("d3.ppt");
  double half_diff = std::abs(a.rows[0].estimate - b.rows[0].estimate) / 2;
  double mean = (a.rows[0].estimate + b.rows[0].estimate) / 2;
  // the two runs bracket the truth within a few half-differences
  CHECK(std::abs(mean - exact) < std::max(3 * half_diff, 5e-4));
}
