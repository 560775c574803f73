#include "bound_atlas/linalg.hpp"
#include "bound_atlas/magic_simplex.hpp"

#include <doctest.h>

#include <Eigen/SVD>
#include <random>

using namespace bound_atlas;

namespace {

Matrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

Matrix random_hermitian(int n, std::mt19937_64& rng) {
  Matrix m = random_matrix(n, rng);
  return (m + m.adjoint()) / 2.0;
}

Matrix random_density(int n, std::mt19937_64& rng) {
  Matrix m = random_matrix(n, rng);
  Matrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

// test-side oracle: smallest root of the characteristic polynomial found by
// sign-change bisection between the Gershgorin bounds
double char_poly_min_root(const Matrix& h) {
  const int n = static_cast<int>(h.rows());
  auto det_shift = [&](double x) {
    Matrix a = h - x * Matrix::Identity(n, n);
    return a.determinant().real();
  };
  double r = 0;
  for (int i = 0; i < n; ++i) {
    double row = std::abs(h(i, i).real());
    for (int j = 0; j < n; ++j)
      if (j != i) row += std::abs(h(i, j));
    r = std::max(r, row);
  }
  // scan upward until the first sign change, then bisect
  double lo = -r - 1, hi = r + 1;
  const int grid = 4096;
  double prev = det_shift(lo), x_prev = lo, found = hi;
  for (int i = 1; i <= grid; ++i) {
    double x = lo + (hi - lo) * i / grid;
    double v = det_shift(x);
    if (prev == 0.0) return x_prev;
    if ((prev > 0) != (v > 0)) {
      double a = x_prev, b = x;
      for (int it = 0; it < 200; ++it) {
        double m = (a + b) / 2;
        if ((det_shift(a) > 0) != (det_shift(m) > 0))
          b = m;
        else
          a = m;
      }
      found = (a + b) / 2;
      break;
    }
    prev = v;
    x_prev = x;
  }
  return found;
}

}  // namespace

TEST_CASE("partial transpose of a product transposes one factor") {
  std::mt19937_64 rng(41);
  Matrix A = random_matrix(3, rng), B = random_matrix(3, rng);
  Matrix prod(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          prod(i * 3 + j, k * 3 + l) = A(i, k) * B(j, l);
  Matrix ptB = partial_transpose(prod, 3, 3, Subsystem::B);
  Matrix ptA = partial_transpose(prod, 3, 3, Subsystem::A);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          CHECK(std::abs(ptB(i * 3 + j, k * 3 + l) - A(i, k) * B(l, j)) <
                1e-14);
          CHECK(std::abs(ptA(i * 3 + j, k * 3 + l) - A(k, i) * B(j, l)) <
                1e-14);
        }
}

TEST_CASE("partial transpose is an involution preserving trace/hermiticity") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 1000; ++rep) {
    const bool big = rep % 2 == 1;
    const int da = big ? 4 : 3;
    Matrix h = random_hermitian(da * da, rng);
    Matrix pt = partial_transpose(h, da, da);
    CHECK(hermiticity_defect(pt) < 1e-12);
    CHECK(std::abs((pt.trace() - h.trace()).real()) < 1e-12);
    Matrix back = partial_transpose(pt, da, da);
    CHECK((back - h).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("partially transposed maximally entangled projector is swap/d") {
  Matrix p00 = bell_projector(3, 0, 0);
  Matrix pt = partial_transpose(p00, 3, 3);
  Matrix swap(9, 9);
  swap.setZero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) swap(i * 3 + j, j * 3 + i) = 1.0;
  CHECK((pt - swap / 3.0).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(min_eigenvalue(pt) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("partial transpose requires a split") {
  ComplexMatrix m(Matrix::Identity(9, 9));
  CHECK_THROWS_AS(partial_transpose(m), std::invalid_argument);
  CHECK_THROWS_AS(realign(m), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(Matrix::Identity(9, 9), 2, 3),
                  std::invalid_argument);
}

TEST_CASE("is_psd verdicts") {
  ComplexMatrix mixed(Matrix::Identity(9, 9) / 9.0, 3, 3);
  PsdVerdict v = is_psd(mixed);
  CHECK(v.is_psd);
  CHECK(v.min_eigenvalue == doctest::Approx(1.0 / 9.0));

  ComplexMatrix pt(partial_transpose(bell_projector(3, 0, 0), 3, 3), 3, 3);
  v = is_psd(pt);
  CHECK_FALSE(v.is_psd);
  CHECK(v.min_eigenvalue == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));

  Matrix d = Matrix::Zero(4, 4);
  d(0, 0) = 1.0;
  CHECK(is_psd(ComplexMatrix(d)).is_psd);

  Matrix nh = Matrix::Zero(3, 3);
  nh(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(is_psd(ComplexMatrix(nh)), std::invalid_argument);
}

TEST_CASE("min eigenvalue matches a characteristic-polynomial bracket") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 25; ++rep) {
    Matrix h = random_hermitian(4, rng);
    CHECK(min_eigenvalue(h) ==
          doctest::Approx(char_poly_min_root(h)).epsilon(1e-9));
  }
}

TEST_CASE("realignment of a product state is rank one") {
  std::mt19937_64 rng(13);
  Matrix a = random_density(3, rng), b = random_density(3, rng);
  Matrix prod(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          prod(i * 3 + j, k * 3 + l) = a(i, k) * b(j, l);
  Matrix r = realign(prod, 3, 3);
  Eigen::JacobiSVD<Matrix> svd(r);
  auto sv = svd.singularValues();
  CHECK(sv(0) == doctest::Approx(a.norm() * b.norm()).epsilon(1e-12));
  for (int i = 1; i < sv.size(); ++i) CHECK(sv(i) < 1e-12);
}

TEST_CASE("realignment nuclear norms against a direct SVD oracle") {
  auto svd_nuclear = [](const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
  };
  Matrix mixed = Matrix::Identity(9, 9) / 9.0;
  Matrix r1 = realign(mixed, 3, 3);
  CHECK(nuclear_norm(r1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(nuclear_norm(r1) == doctest::Approx(svd_nuclear(r1)).epsilon(1e-12));

  Matrix r2 = realign(bell_projector(3, 0, 0), 3, 3);
  CHECK(nuclear_norm(r2) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(nuclear_norm(r2) == doctest::Approx(svd_nuclear(r2)).epsilon(1e-12));
}

TEST_CASE("nuclear norm basics") {
  CHECK(nuclear_norm(Matrix::Zero(5, 5)) == 0.0);
  CHECK(nuclear_norm(Matrix::Identity(7, 7)) ==
        doctest::Approx(7.0).epsilon(1e-13));
}

TEST_CASE("CCNR never exceeds one on product states") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    Matrix a = random_density(3, rng), b = random_density(3, rng);
    Matrix prod(9, 9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            prod(i * 3 + j, k * 3 + l) = a(i, k) * b(j, l);
    CHECK(nuclear_norm(realign(prod, 3, 3)) <= 1.0 + 1e-10);
  }
}

TEST_CASE("trace pairing") {
  Matrix I9 = Matrix::Identity(9, 9);
  std::mt19937_64 rng(19);
  Matrix rho = random_density(9, rng);
  CHECK(trace_pair(I9, rho).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(trace_pair(bell_projector(3, 0, 0), bell_projector(3, 0, 1))) <
        1e-13);
  CHECK(std::abs(trace_pair(bell_projector(3, 1, 2), bell_projector(3, 1, 2)) -
                 1.0) < 1e-13);
  // conjugate symmetry
  Matrix A = random_matrix(5, rng), B = random_matrix(5, rng);
  CHECK(std::abs(trace_pair(A, B) - std::conj(trace_pair(B, A))) < 1e-12);
  CHECK_THROWS_AS(trace_pair(Matrix::Identity(3, 3), Matrix::Identity(4, 4)),
                  std::invalid_argument);
}

TEST_CASE("random densities are PSD with unit trace") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 50; ++rep) {
    Matrix rho = random_density(9, rng);
    CHECK(is_psd(ComplexMatrix(rho, 3, 3)).is_psd);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
  }
}
