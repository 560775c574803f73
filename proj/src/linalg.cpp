#include "bound_atlas/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <limits>
#include <Eigen/SVD>
#include <cmath>

namespace bound_atlas {

Matrix partial_transpose(const Matrix& m, int da, int db, Subsystem which) {
  if (static_cast<long>(da) * db != m.rows())
    throw std::invalid_argument("partial_transpose: split does not match dim");
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) {
          // row (i,j), col (k,l); transpose the selected subsystem's indices
          if (which == Subsystem::B)
            out(i * db + l, k * db + j) = m(i * db + j, k * db + l);
          else
            out(k * db + j, i * db + l) = m(i * db + j, k * db + l);
        }
  return out;
}

Matrix realign(const Matrix& m, int da, int db) {
  if (static_cast<long>(da) * db != m.rows())
    throw std::invalid_argument("realign: split does not match dim");
  Matrix out(da * da, db * db);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k)
      for (int j = 0; j < db; ++j)
        for (int l = 0; l < db; ++l)
          out(i * da + k, j * db + l) = m(i * db + j, k * db + l);
  return out;
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian,
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double nuclear_norm(const Matrix& m) {
  // singular values = sqrt of the spectrum of m^dagger m; eigenvalues below
  // the numerical noise floor of the Gram matrix are discarded, otherwise
  // their square roots would inflate the sum by ~sqrt(eps)
  Matrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double cutoff = std::max(0.0, ev.maxCoeff()) *
                        static_cast<double>(ev.size()) *
                        std::numeric_limits<double>::epsilon();
  double sum = 0.0;
  for (int i = 0; i < ev.size(); ++i)
    if (ev[i] > cutoff) sum += std::sqrt(ev[i]);
  return sum;
}

Complex trace_pair(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("trace_pair: dimension mismatch");
  // Tr[a^dagger b] = sum_ij conj(a_ij) b_ij, no matrix product needed
  return (a.conjugate().cwiseProduct(b)).sum();
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem which) {
  if (!m.has_split())
    throw std::invalid_argument("partial_transpose: missing bipartite split");
  return ComplexMatrix(partial_transpose(m.mat(), m.dim_a(), m.dim_b(), which),
                       m.dim_a(), m.dim_b());
}

ComplexMatrix realign(const ComplexMatrix& m) {
  if (!m.has_split())
    throw std::invalid_argument("realign: missing bipartite split");
  return ComplexMatrix(realign(m.mat(), m.dim_a(), m.dim_b()));
}

PsdVerdict is_psd(const Matrix& h, double tol) {
  if (hermiticity_defect(h) >
      std::max(tol, 16 * std::numeric_limits<double>::epsilon()))
    throw std::invalid_argument("is_psd: input is not Hermitian");
  PsdVerdict v;
  v.tolerance = tol;
  v.min_eigenvalue = min_eigenvalue(h);
  v.is_psd = v.min_eigenvalue >= -tol;
  return v;
}

PsdVerdict is_psd(const ComplexMatrix& h, double tol) {
  return is_psd(h.mat(), tol);
}

double nuclear_norm(const ComplexMatrix& m) { return nuclear_norm(m.mat()); }

Complex trace_pair(const ComplexMatrix& a, const ComplexMatrix& b) {
  return trace_pair(a.mat(), b.mat());
}

}  // namespace bound_atlas
