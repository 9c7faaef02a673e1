#include "mrpower/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mrpower {

HermitianOperator::HermitianOperator(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator must be square with dim >= 1, got " + std::to_string(entries.rows()) +
                    "x" + std::to_string(entries.cols()));
  }
  const double dev = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol::herm) {
    throw Error(ErrorKind::NotHermitian, "max |X - X^dag| = " + std::to_string(dev));
  }
  m_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator hermitian_part(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch, "operator must be square");
  }
  return HermitianOperator(Matrix(0.5 * (m + m.adjoint())), HermitianOperator::Unchecked{});
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
  return HermitianOperator(Matrix::Zero(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  return HermitianOperator(Matrix::Identity(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::diagonal(const RealVector& diag) {
  return HermitianOperator(Matrix(diag.cast<Complex>().asDiagonal()), Unchecked{});
}

HermitianOperator HermitianOperator::basis_projector(std::size_t dim, std::size_t i) {
  Matrix m = Matrix::Zero(dim, dim);
  m(i, i) = 1.0;
  return HermitianOperator(std::move(m), Unchecked{});
}

HermitianOperator HermitianOperator::projector(const Vector& psi) {
  return hermitian_part(psi * psi.adjoint());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw Error(ErrorKind::DimensionMismatch, "operator +");
  return HermitianOperator(Matrix(m_ + other.m_), Unchecked{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw Error(ErrorKind::DimensionMismatch, "operator -");
  return HermitianOperator(Matrix(m_ - other.m_), Unchecked{});
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(Matrix(m_ * s), Unchecked{});
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& other) {
  if (dim() != other.dim()) throw Error(ErrorKind::DimensionMismatch, "operator +=");
  m_ += other.m_;
  return *this;
}

double max_abs_diff(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "max_abs_diff shapes differ");
  }
  if (x.size() == 0) return 0.0;
  return (x - y).cwiseAbs().maxCoeff();
}

RealVector eigenvalues(const HermitianOperator& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double min_eigenvalue(const HermitianOperator& x) { return eigenvalues(x).minCoeff(); }

bool is_psd(const HermitianOperator& x, double tolerance) {
  return min_eigenvalue(x) >= -tolerance;
}

namespace {

void require_psd(const RealVector& evals, const char* what) {
  const double lo = evals.minCoeff();
  if (lo < -tol::psd) {
    throw Error(ErrorKind::NotPsd,
                std::string(what) + " has eigenvalue " + std::to_string(lo));
  }
}

double entropy_of_spectrum(const RealVector& evals) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    const double l = evals[k];
    if (l > tol::eig_clip) s -= l * std::log2(l);
  }
  return s;
}

}  // namespace

double von_neumann_entropy(const HermitianOperator& x) {
  const RealVector evals = eigenvalues(x);
  require_psd(evals, "von_neumann_entropy argument");
  return entropy_of_spectrum(evals);
}

double relative_entropy(const HermitianOperator& x, const HermitianOperator& y) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "relative_entropy: " + std::to_string(x.dim()) +
                                                  " vs " + std::to_string(y.dim()));
  }
  const RealVector ex = eigenvalues(x);
  require_psd(ex, "relative_entropy first argument");

  Eigen::SelfAdjointEigenSolver<Matrix> ey(y.matrix());
  require_psd(ey.eigenvalues(), "relative_entropy second argument");

  // tr[X log Y] = sum_k log(mu_k) <v_k|X|v_k>, restricted to supp Y.
  const Matrix& v = ey.eigenvectors();
  double cross = 0.0;
  double null_mass = 0.0;
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const double weight = (v.col(k).adjoint() * x.matrix() * v.col(k))(0, 0).real();
    const double mu = ey.eigenvalues()[k];
    if (mu > tol::eig_clip) {
      cross += weight * std::log2(mu);
    } else {
      null_mass += weight;
    }
  }
  if (null_mass > tol::support) return std::numeric_limits<double>::infinity();
  return -entropy_of_spectrum(ex) - cross;
}

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

HermitianOperator tensor_product(const HermitianOperator& x, const HermitianOperator& y) {
  return hermitian_part(kron(x.matrix(), y.matrix()));
}

HermitianOperator partial_trace(const HermitianOperator& x, Dims dims, Keep keep) {
  if (dims.a == 0 || dims.b == 0 || dims.a * dims.b != x.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "partial_trace: dim " + std::to_string(x.dim()) + " != " +
                    std::to_string(dims.a) + "*" + std::to_string(dims.b));
  }
  const auto da = static_cast<Eigen::Index>(dims.a);
  const auto db = static_cast<Eigen::Index>(dims.b);
  const Matrix& m = x.matrix();
  if (keep == Keep::A) {
    Matrix out = Matrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index k = 0; k < da; ++k)
        for (Eigen::Index j = 0; j < db; ++j) out(i, k) += m(i * db + j, k * db + j);
    return hermitian_part(out);
  }
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index j = 0; j < db; ++j)
    for (Eigen::Index l = 0; l < db; ++l)
      for (Eigen::Index i = 0; i < da; ++i) out(j, l) += m(i * db + j, i * db + l);
  return hermitian_part(out);
}

HermitianOperator dephase(const HermitianOperator& x) {
  return HermitianOperator::diagonal(x.matrix().diagonal().real());
}

double max_off_diagonal(const HermitianOperator& x) {
  const Matrix& m = x.matrix();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

}  // namespace mrpower
