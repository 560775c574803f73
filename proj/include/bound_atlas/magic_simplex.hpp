#pragma once

#include "bound_atlas/linalg.hpp"

#include <array>
#include <vector>

namespace bound_atlas {

/// Reduced coordinates (Q1,Q2,Q3) for d=3 or (Q1,..,Q4) for d=4.
struct QPoint {
  int d = 3;
  std::array<double, 4> q{};  // first d entries are used

  double operator[](int i) const { return q[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return q[static_cast<std::size_t>(i)]; }
};

inline QPoint make_q3(double q1, double q2, double q3) {
  return QPoint{3, {q1, q2, q3, 0.0}};
}
inline QPoint make_q4(double q1, double q2, double q3, double q4) {
  return QPoint{4, {q1, q2, q3, q4}};
}

/// The family's native parameters (q1..q3 for d=3, q1..q4 for d=4).
struct HLParams {
  int d = 3;
  std::array<double, 4> q{};
};

/// d x d grid of Bell-projector mixing weights c[k,l], stored row-major.
struct SimplexWeights {
  int d = 3;
  std::array<double, 25> c{};  // supports d <= 5

  int count() const { return d * d; }
  double at(int k, int l) const { return c[static_cast<std::size_t>(k * d + l)]; }
  double& at(int k, int l) { return c[static_cast<std::size_t>(k * d + l)]; }
  double sum() const {
    double s = 0;
    for (int i = 0; i < count(); ++i) s += c[static_cast<std::size_t>(i)];
    return s;
  }
};

/// Weyl operator W_{k,l}|s> = omega^{k s} |s+l mod d>, omega = exp(2 pi i/d).
Matrix weyl_op(int d, int k, int l);

/// Shared, immutable Bell basis for a given d (3, 4 or 5).
///
/// Projector labels follow the phase-shift convention
///   P_{k,l} = (W_{k, (d-l) mod d} (x) I) P_{0,0} (W_{k, (d-l) mod d} (x) I)^dagger,
/// i.e. the label's shift runs backwards (s -> s - l). With this labeling the
/// witness traces Tr[W rho(Q)] come out exactly in the affine Q-forms used by
/// the region predicates; the forward-shift labeling differs by the column
/// permutation l -> -l.
class BellBasis {
public:
  explicit BellBasis(int d);
  int d() const { return d_; }
  const Matrix& projector(int k, int l) const {
    return proj_[static_cast<std::size_t>(k * d_ + l)];
  }
  static const BellBasis& shared(int d);

private:
  int d_;
  std::vector<Matrix> proj_;
};

Matrix bell_projector(int d, int k, int l);

QPoint q_to_Q(int d, const HLParams& q);
HLParams Q_to_q(const QPoint& Q);

/// Bell weights of the family state at Q. For d=3 the grid is
///   c[0,0]=Q1, c[1,0]=c[2,0]=Q3, c[k,1]=Q2, c[k,2]=(1-Q1-3Q2-2Q3)/3,
/// and for d=4
///   c[0,0]=Q1, c[k!=0,0]=Q4, c[k,1]=Q2, c[k,2]=Q3, c[k,3]=(1-Q1-4Q2-4Q3-3Q4)/4.
SimplexWeights hl_weights(const QPoint& Q);

/// Density matrix of the family state at Q, carrying the (d,d) split.
ComplexMatrix hl_density(const QPoint& Q);

/// Inverts the Bell mixture via trace pairing with each projector.
/// Throws if rho is not (numerically) in the span of the Bell projectors.
SimplexWeights bell_decompose(const ComplexMatrix& rho, int d);

/// Sum_{k,l} c[k,l] P_{k,l}; weights must be nonnegative and sum to 1.
ComplexMatrix full_density(const SimplexWeights& c);

/// Raw mixture without the density-matrix weight validation (test helper
/// and hot path for the sampler; the caller owns the weight invariants).
Matrix bell_mixture(const SimplexWeights& c);

/// Embedding of the one-parameter family q1=(30-5L)/21, q2=-8L/21,
/// q3=(5-2L)/7 for L in [0,5]; evaluates to Q = (2/7, (5-L)/21, 0).
QPoint horodecki_Q(double lambda);

}  // namespace bound_atlas
