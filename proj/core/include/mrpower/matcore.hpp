#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "mrpower/errors.hpp"

namespace mrpower {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical tolerances shared by every module.
namespace tol {
inline constexpr double herm = 1e-10;     ///< max |X_ij - conj(X_ji)|
inline constexpr double psd = 1e-9;       ///< smallest admissible eigenvalue is -psd
inline constexpr double eig_clip = 1e-12; ///< eigenvalues at or below are treated as zero
inline constexpr double support = 1e-9;   ///< mass of X on ker(Y) that counts as a support mismatch
}  // namespace tol

/// Dense Hermitian operator on a d-dimensional space, written in the
/// computational (incoherent) basis |0>..|d-1>. Holds density matrices, POVM
/// elements and Choi matrices alike; no trace normalization is implied.
class HermitianOperator {
 public:
  /// Validates squareness and Hermiticity within tol::herm, then stores the
  /// exactly Hermitian part (X + X^dag) / 2.
  explicit HermitianOperator(const Matrix& entries);

  static HermitianOperator zero(std::size_t dim);
  static HermitianOperator identity(std::size_t dim);
  static HermitianOperator diagonal(const RealVector& diag);
  /// |i><i| in dimension `dim`.
  static HermitianOperator basis_projector(std::size_t dim, std::size_t i);
  /// |psi><psi| (not normalized).
  static HermitianOperator projector(const Vector& psi);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double trace() const noexcept { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double s) const;
  HermitianOperator& operator+=(const HermitianOperator& other);

 private:
  struct Unchecked {};
  HermitianOperator(Matrix entries, Unchecked) : m_(std::move(entries)) {}
  friend HermitianOperator hermitian_part(const Matrix& m);

  Matrix m_;
};

inline HermitianOperator operator*(double s, const HermitianOperator& x) { return x * s; }

/// (M + M^dag)/2 without a Hermiticity check; for results of maps that are
/// Hermitian up to rounding (K X K^dag sums, partial traces, ...).
HermitianOperator hermitian_part(const Matrix& m);

/// Bipartite split d = a * b with A-factor-major ordering: |i>_A|j>_B -> i*b + j.
struct Dims {
  std::size_t a;
  std::size_t b;
};

enum class Keep { A, B };

double max_abs_diff(const Matrix& x, const Matrix& y);
inline double max_abs_diff(const HermitianOperator& x, const HermitianOperator& y) {
  return max_abs_diff(x.matrix(), y.matrix());
}

/// Ascending eigenvalues.
RealVector eigenvalues(const HermitianOperator& x);
double min_eigenvalue(const HermitianOperator& x);
bool is_psd(const HermitianOperator& x, double tolerance = tol::psd);

/// -sum lambda log2 lambda over eigenvalues above tol::eig_clip. Accepts any PSD
/// operator; the trace is not required to be one, so 2|0><0| gives -2.
double von_neumann_entropy(const HermitianOperator& x);

/// tr[X log2 X] - tr[X log2 Y] for PSD X, Y, or +inf when supp X is not inside
/// supp Y. There is deliberately no (tr Y - tr X) correction term: for
/// subnormalized arguments a single term can be negative, while every sum
/// over a pair of complete POVMs stays nonnegative.
double relative_entropy(const HermitianOperator& x, const HermitianOperator& y);

HermitianOperator tensor_product(const HermitianOperator& x, const HermitianOperator& y);
Matrix kron(const Matrix& x, const Matrix& y);

HermitianOperator partial_trace(const HermitianOperator& x, Dims dims, Keep keep);

/// Zero the off-diagonal part in the incoherent basis.
HermitianOperator dephase(const HermitianOperator& x);

/// Largest |X_ij| over i != j.
double max_off_diagonal(const HermitianOperator& x);

}  // namespace mrpower
