#include "bound_atlas/magic_simplex.hpp"
#include "bound_atlas/regions.hpp"

#include <doctest.h>

#include <random>

using namespace bound_atlas;

namespace {
QPoint random_region_point(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    QPoint Q;
    Q.d = d;
    if (d == 3) {
      Q[0] = u(rng);
      Q[1] = u(rng) / 3;
      Q[2] = u(rng) / 2;
    } else {
      Q[0] = u(rng);
      Q[1] = u(rng) / 4;
      Q[2] = u(rng) / 4;
      Q[3] = u(rng) / 3;
    }
    if (density_region(Q)) return Q;
  }
}
}  // namespace

TEST_CASE("weyl operators") {
  CHECK((weyl_op(3, 0, 0) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-15);
  // cyclic shift
  Matrix s = weyl_op(3, 0, 1);
  Matrix expect = Matrix::Zero(3, 3);
  expect(1, 0) = expect(2, 1) = expect(0, 2) = 1.0;
  CHECK((s - expect).cwiseAbs().maxCoeff() < 1e-15);
  // phase matrix
  Matrix p = weyl_op(3, 1, 0);
  const Complex w = std::exp(Complex(0, 2 * 3.14159265358979323846 / 3));
  CHECK(std::abs(p(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(p(1, 1) - w) < 1e-15);
  CHECK(std::abs(p(2, 2) - w * w) < 1e-15);
  // unitarity
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      Matrix v = weyl_op(4, k, l);
      CHECK((v * v.adjoint() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
            1e-14);
    }
  CHECK_THROWS_AS(weyl_op(3, 3, 0), std::out_of_range);
}

TEST_CASE("bell projectors are an orthonormal complete family") {
  for (int d : {3, 4}) {
    Matrix sum = Matrix::Zero(d * d, d * d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        const Matrix& p = bell_projector(d, k, l);
        CHECK(std::abs(p.trace().real() - 1.0) < 1e-13);
        CHECK(hermiticity_defect(p) < 1e-14);
        sum += p;
        for (int m = 0; m < d; ++m)
          for (int n = 0; n < d; ++n) {
            double expect = (k == m && l == n) ? 1.0 : 0.0;
            CHECK(std::abs(trace_pair(p, bell_projector(d, m, n)) - expect) <
                  1e-12);
          }
      }
    CHECK((sum - Matrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff() < 1e-12);
  }
  // d=5 basis builds and is complete
  Matrix sum5 = Matrix::Zero(25, 25);
  for (int k = 0; k < 5; ++k)
    for (int l = 0; l < 5; ++l) sum5 += bell_projector(5, k, l);
  CHECK((sum5 - Matrix::Identity(25, 25)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("coordinate transforms") {
  QPoint Q = q_to_Q(3, HLParams{3, {0, 0, 0, 0}});
  CHECK(Q[0] == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(Q[1] == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  CHECK(Q[2] == doctest::Approx(1.0 / 9.0).epsilon(1e-14));

  QPoint Q4 = q_to_Q(4, HLParams{4, {0, 0, 0, 0}});
  for (int i = 0; i < 4; ++i)
    CHECK(Q4[i] == doctest::Approx(1.0 / 16.0).epsilon(1e-14));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int rep = 0; rep < 10000; ++rep) {
    const int d = rep % 2 ? 4 : 3;
    HLParams q{d, {}};
    for (int i = 0; i < d; ++i) q.q[static_cast<std::size_t>(i)] = u(rng);
    HLParams back = Q_to_q(q_to_Q(d, q));
    for (int i = 0; i < d; ++i)
      CHECK(back.q[static_cast<std::size_t>(i)] ==
            doctest::Approx(q.q[static_cast<std::size_t>(i)]).epsilon(1e-12));
    // and the reverse direction
    QPoint Qr;
    Qr.d = d;
    for (int i = 0; i < d; ++i) Qr[i] = u(rng) * 0.2;
    QPoint Qb = q_to_Q(d, Q_to_q(Qr));
    for (int i = 0; i < d; ++i)
      CHECK(Qb[i] == doctest::Approx(Qr[i]).epsilon(1e-12));
  }
}

TEST_CASE("embedded line") {
  QPoint Q = horodecki_Q(3.0);
  CHECK(Q[0] == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
  CHECK(Q[1] == doctest::Approx(2.0 / 21.0).epsilon(1e-14));
  CHECK(std::abs(Q[2]) < 1e-14);

  CHECK_FALSE(ppt_region(horodecki_Q(4.5)));
  CHECK(ppt_region(horodecki_Q(3.5)));
  CHECK(horodecki_Q(3.5)[0] > 3 * horodecki_Q(3.5)[1] + 4 * horodecki_Q(3.5)[2]);
  CHECK(ppt_region(horodecki_Q(1.0)));
  CHECK(ppt_region(horodecki_Q(4.0)));
  CHECK_FALSE(ppt_region(horodecki_Q(0.99)));
  CHECK_THROWS_AS(horodecki_Q(5.5), std::domain_error);
}

TEST_CASE("family density matrices") {
  QPoint mixed = make_q3(1.0 / 9, 1.0 / 9, 1.0 / 9);
  ComplexMatrix rho = hl_density(mixed);
  CHECK((rho.mat() - Matrix::Identity(9, 9) / 9.0).cwiseAbs().maxCoeff() <
        1e-13);

  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 10000; ++rep) {
    const int d = rep % 2 ? 4 : 3;
    QPoint Q = random_region_point(d, rng);
    ComplexMatrix r = hl_density(Q);
    CHECK(std::abs(r.mat().trace().real() - 1.0) < 1e-12);
    CHECK(hermiticity_defect(r.mat()) < 1e-12);
    CHECK(is_psd(r).is_psd);
  }
  CHECK_THROWS_AS(hl_density(QPoint{5, {}}), std::invalid_argument);
}

TEST_CASE("bell decomposition recovers the weight pattern") {
  SimplexWeights uniform = bell_decompose(
      ComplexMatrix(Matrix::Identity(9, 9) / 9.0, 3, 3), 3);
  for (int i = 0; i < 9; ++i)
    CHECK(uniform.c[static_cast<std::size_t>(i)] ==
          doctest::Approx(1.0 / 9.0).epsilon(1e-13));

  SimplexWeights onehot =
      bell_decompose(ComplexMatrix(bell_projector(3, 0, 0), 3, 3), 3);
  CHECK(onehot.at(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(onehot.at(1, 2)) < 1e-13);

  // the d=3 grid at Q carries Q1 at (0,0), Q3 at (1,0),(2,0), Q2 down
  // column 1 and the remainder (1-Q1-3Q2-2Q3)/3 down column 2
  QPoint Q = horodecki_Q(3.0);  // (2/7, 2/21, 0)
  SimplexWeights w = bell_decompose(hl_density(Q), 3);
  CHECK(w.at(0, 0) == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
  CHECK(std::abs(w.at(1, 0)) < 1e-12);
  CHECK(std::abs(w.at(2, 0)) < 1e-12);
  for (int k = 0; k < 3; ++k) {
    CHECK(w.at(k, 1) == doctest::Approx(2.0 / 21.0).epsilon(1e-12));
    CHECK(w.at(k, 2) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  }

  // pattern holds across the region for both d
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10000; ++rep) {
    const int d = rep % 2 ? 4 : 3;
    QPoint P = random_region_point(d, rng);
    SimplexWeights got = bell_decompose(hl_density(P), d);
    SimplexWeights expect = hl_weights(P);
    for (int i = 0; i < got.count(); ++i)
      CHECK(got.c[static_cast<std::size_t>(i)] ==
            doctest::Approx(expect.c[static_cast<std::size_t>(i)])
                .epsilon(1e-12));
  }

  // off-span input is rejected
  Matrix off = Matrix::Identity(9, 9) / 9.0;
  off(0, 1) = off(1, 0) = 0.05;
  CHECK_THROWS_AS(bell_decompose(ComplexMatrix(off, 3, 3), 3),
                  std::invalid_argument);
}

TEST_CASE("full mixtures") {
  SimplexWeights uniform;
  uniform.d = 3;
  for (int i = 0; i < 9; ++i) uniform.c[static_cast<std::size_t>(i)] = 1.0 / 9;
  CHECK((full_density(uniform).mat() - Matrix::Identity(9, 9) / 9.0)
            .cwiseAbs()
            .maxCoeff() < 1e-13);

  SimplexWeights onehot;
  onehot.d = 3;
  onehot.at(1, 2) = 1.0;
  CHECK((full_density(onehot).mat() - bell_projector(3, 1, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-13);

  // round trip through decomposition
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SimplexWeights w;
  w.d = 3;
  double s = 0;
  for (int i = 0; i < 9; ++i) s += (w.c[static_cast<std::size_t>(i)] = u(rng));
  for (int i = 0; i < 9; ++i) w.c[static_cast<std::size_t>(i)] /= s;
  ComplexMatrix rho = full_density(w);
  SimplexWeights back = bell_decompose(rho, 3);
  for (int i = 0; i < 9; ++i)
    CHECK(back.c[static_cast<std::size_t>(i)] ==
          doctest::Approx(w.c[static_cast<std::size_t>(i)]).epsilon(1e-12));

  SimplexWeights bad = w;
  bad.at(0, 0) += 0.5;
  CHECK_THROWS_AS(full_density(bad), std::invalid_argument);
}
