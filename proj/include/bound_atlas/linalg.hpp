#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace bound_atlas {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Absolute eigenvalue tolerance used for PSD decisions on unit-trace matrices.
// Non-strict: boundary states (smallest eigenvalue == 0) classify as PSD.
inline constexpr double kPsdTol = 1e-10;

enum class Subsystem { A, B };

/// Dense complex square matrix, optionally carrying a bipartite split
/// (dim_a, dim_b) with dim_a * dim_b == dim. The split is required by the
/// bipartite operations (partial transpose, realignment).
class ComplexMatrix {
public:
  ComplexMatrix() = default;

  explicit ComplexMatrix(Matrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
      throw std::invalid_argument("ComplexMatrix: matrix must be square");
  }

  ComplexMatrix(Matrix m, int dim_a, int dim_b)
      : mat_(std::move(m)), dim_a_(dim_a), dim_b_(dim_b) {
    if (mat_.rows() != mat_.cols())
      throw std::invalid_argument("ComplexMatrix: matrix must be square");
    if (dim_a_ <= 0 || dim_b_ <= 0 ||
        static_cast<long>(dim_a_) * dim_b_ != mat_.rows())
      throw std::invalid_argument(
          "ComplexMatrix: bipartite split must satisfy dim_a*dim_b == dim");
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  bool has_split() const { return dim_a_ > 0; }
  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const Matrix& mat() const { return mat_; }

private:
  Matrix mat_;
  int dim_a_ = 0;
  int dim_b_ = 0;
};

struct PsdVerdict {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  double tolerance = kPsdTol;
};

// ---- core routines on raw Eigen matrices (hot path) ----

/// Transpose the indices of one subsystem of a (da*db)x(da*db) matrix.
Matrix partial_transpose(const Matrix& m, int da, int db,
                         Subsystem which = Subsystem::B);

/// Realignment R(m)[(i,k),(j,l)] = m[(i,j),(k,l)]; result is da^2 x db^2.
/// The convention is fixed by the product-state identity:
/// realign(A (x) B) = vec(A) vec(B)^T, a rank-1 matrix.
Matrix realign(const Matrix& m, int da, int db);

/// Smallest eigenvalue of a Hermitian matrix (spectral, not minor-based).
double min_eigenvalue(const Matrix& hermitian);

/// Sum of singular values. Computed from the spectrum of m^dagger m.
double nuclear_norm(const Matrix& m);

/// Tr[A^dagger B]; conjugate-symmetric in its arguments.
Complex trace_pair(const Matrix& a, const Matrix& b);

/// Max-entry deviation from Hermiticity, max_ij |m_ij - conj(m_ji)|.
double hermiticity_defect(const Matrix& m);

// ---- wrappers on ComplexMatrix (split-carrying interface) ----

ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                Subsystem which = Subsystem::B);
ComplexMatrix realign(const ComplexMatrix& m);
PsdVerdict is_psd(const ComplexMatrix& h, double tol = kPsdTol);
PsdVerdict is_psd(const Matrix& h, double tol = kPsdTol);
double nuclear_norm(const ComplexMatrix& m);
Complex trace_pair(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace bound_atlas
