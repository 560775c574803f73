#include "bound_atlas/magic_simplex.hpp"

#include <cmath>
#include <mutex>

namespace bound_atlas {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_indices(int d, int k, int l) {
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (k < 0 || k >= d || l < 0 || l >= d)
    throw std::out_of_range("Weyl/Bell index out of range");
}
}  // namespace

Matrix weyl_op(int d, int k, int l) {
  check_indices(d, k, l);
  Matrix w = Matrix::Zero(d, d);
  for (int s = 0; s < d; ++s) {
    double phase = 2.0 * kPi * k * s / d;
    w((s + l) % d, s) = Complex(std::cos(phase), std::sin(phase));
  }
  return w;
}

BellBasis::BellBasis(int d) : d_(d) {
  if (d != 3 && d != 4 && d != 5)
    throw std::invalid_argument("BellBasis: d must be 3, 4 or 5");
  proj_.reserve(static_cast<std::size_t>(d * d));
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      // |psi_{k,l}> = (1/sqrt d) sum_s omega^{k s} |s-l mod d, s>
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d * d);
      for (int s = 0; s < d; ++s) {
        double phase = 2.0 * kPi * k * s / d;
        psi(((s - l + d) % d) * d + s) =
            Complex(std::cos(phase), std::sin(phase)) / std::sqrt(double(d));
      }
      proj_.push_back(psi * psi.adjoint());
    }
}

const BellBasis& BellBasis::shared(int d) {
  static const BellBasis b3(3);
  static const BellBasis b4(4);
  static const BellBasis b5(5);
  switch (d) {
    case 3: return b3;
    case 4: return b4;
    case 5: return b5;
    default: throw std::invalid_argument("BellBasis: d must be 3, 4 or 5");
  }
}

Matrix bell_projector(int d, int k, int l) {
  check_indices(d, k, l);
  return BellBasis::shared(d).projector(k, l);
}

QPoint q_to_Q(int d, const HLParams& q) {
  if (q.d != d) throw std::invalid_argument("q_to_Q: dimension mismatch");
  const double q1 = q.q[0], q2 = q.q[1], q3 = q.q[2];
  if (d == 3) {
    return make_q3((32 * q1 - 5 * q2 - 20 * q3 + 20) / 180.0,
                   (-4 * q1 - 5 * q2 + 40 * q3 + 20) / 180.0,
                   (-8 * q1 + 35 * q2 - 40 * q3 + 40) / 360.0);
  }
  if (d == 4) {
    const double q4 = q.q[3];
    return make_q4(
        (75 * q1 - 11 * q2 - 55 * q3 - 55 * q4 + 55) / 880.0,
        (-5 * q1 - 11 * q2 + 165 * q3 - 55 * q4 + 55) / 880.0,
        (-5 * q1 - 11 * q2 - 55 * q3 + 165 * q4 + 55) / 880.0,
        (-15 * q1 + 143 * q2 - 165 * q3 - 165 * q4 + 165) / 2640.0);
  }
  throw std::invalid_argument("q_to_Q: d must be 3 or 4");
}

HLParams Q_to_q(const QPoint& Q) {
  const double Q1 = Q[0], Q2 = Q[1], Q3 = Q[2];
  if (Q.d == 3) {
    HLParams out{3, {}};
    out.q[0] = (5.0 / 3.0) * (4 * Q1 + 3 * Q2 + 2 * Q3 - 1);
    out.q[1] = (8.0 / 3.0) * (Q1 + 3 * Q2 + 5 * Q3 - 1);
    out.q[2] = Q1 + 6 * Q2 + 2 * Q3 - 1;
    return out;
  }
  if (Q.d == 4) {
    const double Q4 = Q[3];
    HLParams out{4, {}};
    out.q[0] = (11.0 / 4.0) * (5 * Q1 + 4 * Q2 + 4 * Q3 + 3 * Q4 - 1);
    out.q[1] = (15.0 / 4.0) * (Q1 + 4 * Q2 + 4 * Q3 + 7 * Q4 - 1);
    out.q[2] = Q1 + 8 * Q2 + 4 * Q3 + 3 * Q4 - 1;
    out.q[3] = Q1 + 4 * Q2 + 8 * Q3 + 3 * Q4 - 1;
    return out;
  }
  throw std::invalid_argument("Q_to_q: d must be 3 or 4");
}

SimplexWeights hl_weights(const QPoint& Q) {
  SimplexWeights w;
  w.d = Q.d;
  if (Q.d == 3) {
    const double rest = (1 - Q[0] - 3 * Q[1] - 2 * Q[2]) / 3.0;
    w.at(0, 0) = Q[0];
    w.at(1, 0) = w.at(2, 0) = Q[2];
    for (int k = 0; k < 3; ++k) {
      w.at(k, 1) = Q[1];
      w.at(k, 2) = rest;
    }
    return w;
  }
  if (Q.d == 4) {
    const double rest = (1 - Q[0] - 4 * Q[1] - 4 * Q[2] - 3 * Q[3]) / 4.0;
    w.at(0, 0) = Q[0];
    for (int k = 1; k < 4; ++k) w.at(k, 0) = Q[3];
    for (int k = 0; k < 4; ++k) {
      w.at(k, 1) = Q[1];
      w.at(k, 2) = Q[2];
      w.at(k, 3) = rest;
    }
    return w;
  }
  throw std::invalid_argument("hl_weights: d must be 3 or 4");
}

Matrix bell_mixture(const SimplexWeights& c) {
  const BellBasis& basis = BellBasis::shared(c.d);
  const int n = c.d * c.d;
  Matrix rho = Matrix::Zero(n, n);
  for (int k = 0; k < c.d; ++k)
    for (int l = 0; l < c.d; ++l) {
      double w = c.at(k, l);
      if (w != 0.0) rho.noalias() += w * basis.projector(k, l);
    }
  return rho;
}

ComplexMatrix hl_density(const QPoint& Q) {
  return ComplexMatrix(bell_mixture(hl_weights(Q)), Q.d, Q.d);
}

SimplexWeights bell_decompose(const ComplexMatrix& rho, int d) {
  if (rho.dim() != d * d)
    throw std::invalid_argument("bell_decompose: dimension mismatch");
  const BellBasis& basis = BellBasis::shared(d);
  SimplexWeights out;
  out.d = d;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      Complex t = trace_pair(basis.projector(k, l), rho.mat());
      if (std::abs(t.imag()) > 1e-12)
        throw std::invalid_argument(
            "bell_decompose: non-real projector overlap");
      out.at(k, l) = t.real();
    }
  // residual after projecting back onto the Bell span
  Matrix recon = bell_mixture(out);
  if ((recon - rho.mat()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument(
        "bell_decompose: matrix lies outside the Bell-diagonal span");
  return out;
}

ComplexMatrix full_density(const SimplexWeights& c) {
  double s = 0;
  for (int i = 0; i < c.count(); ++i) {
    double w = c.c[static_cast<std::size_t>(i)];
    if (w < -1e-12)
      throw std::invalid_argument("full_density: negative weight");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw std::invalid_argument("full_density: weights must sum to 1");
  return ComplexMatrix(bell_mixture(c), c.d, c.d);
}

QPoint horodecki_Q(double lambda) {
  if (lambda < 0.0 || lambda > 5.0)
    throw std::domain_error("horodecki_Q: lambda must lie in [0,5]");
  HLParams q{3, {}};
  q.q[0] = (30 - 5 * lambda) / 21.0;
  q.q[1] = -8 * lambda / 21.0;
  q.q[2] = (5 - 2 * lambda) / 7.0;
  return q_to_Q(3, q);
}

}  // namespace bound_atlas
