#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mrpower/matcore.hpp"

namespace mrpower {

/// Finite POVM {M_x}: PSD elements summing to the identity on a d-dimensional
/// input. The outcome count is independent of d.
class Povm {
 public:
  /// Throws InvalidPovm when an element is not PSD within tol::psd or the
  /// elements do not sum to I within 1e-9; DimensionMismatch on ragged input.
  explicit Povm(std::vector<HermitianOperator> elements);

  std::size_t dim() const noexcept { return elements_.front().dim(); }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<HermitianOperator>& elements() const noexcept { return elements_; }
  const HermitianOperator& operator[](std::size_t x) const { return elements_.at(x); }

 private:
  std::vector<HermitianOperator> elements_;
};

inline constexpr double kCompletenessTol = 1e-9;

/// Column-stochastic matrix p(x|i): rows are outcomes, columns are inputs.
class StochasticMatrix {
 public:
  /// Throws InvalidStochastic for negative entries (below -1e-12) or a
  /// column sum off by more than 1e-10.
  explicit StochasticMatrix(Eigen::MatrixXd entries);

  static StochasticMatrix identity(std::size_t n);

  std::size_t outcomes() const noexcept { return static_cast<std::size_t>(p_.rows()); }
  std::size_t inputs() const noexcept { return static_cast<std::size_t>(p_.cols()); }
  double operator()(std::size_t x, std::size_t i) const { return p_(x, i); }
  const Eigen::MatrixXd& entries() const noexcept { return p_; }

 private:
  Eigen::MatrixXd p_;
};

inline constexpr double kStochasticTol = 1e-10;

/// CPTP map in Kraus form. The Choi matrix sum_ij E(|i><j|) (x) |i><j| (output
/// factor first) is computed once at construction.
class QuantumChannel {
 public:
  /// Throws NotTracePreserving if sum K^dag K deviates from I by more than 1e-9.
  explicit QuantumChannel(std::vector<Matrix> kraus);

  std::size_t dim_in() const noexcept { return static_cast<std::size_t>(kraus_.front().cols()); }
  std::size_t dim_out() const noexcept { return static_cast<std::size_t>(kraus_.front().rows()); }
  bool is_square() const noexcept { return dim_in() == dim_out(); }
  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }
  const HermitianOperator& choi() const noexcept { return choi_; }

 private:
  std::vector<Matrix> kraus_;
  HermitianOperator choi_;
};

inline constexpr double kTracePreservingTol = 1e-9;
inline constexpr double kChannelEqualTol = 1e-9;

QuantumChannel channel_from_kraus(std::vector<Matrix> kraus);

/// Kraus operators from the eigendecomposition of a PSD Choi matrix laid out
/// as in QuantumChannel::choi().
QuantumChannel channel_from_choi(const HermitianOperator& choi, std::size_t dim_in,
                                 std::size_t dim_out);

QuantumChannel identity_channel(std::size_t d);
QuantumChannel dephasing_channel(std::size_t d);
QuantumChannel unitary_channel(const Matrix& u);

/// sum_k K_k X K_k^dag.
HermitianOperator apply(const QuantumChannel& e, const HermitianOperator& x);
/// sum_k K_k^dag X K_k (Heisenberg picture); X lives on the output space.
HermitianOperator adjoint_apply(const QuantumChannel& e, const HermitianOperator& x);

/// Same channel with at most dim_in * dim_out Kraus operators (rebuilt from
/// the Choi matrix when the list is longer).
QuantumChannel compact(const QuantumChannel& e);

/// e2 after e1. The Kraus list of the result is compacted.
QuantumChannel compose(const QuantumChannel& e2, const QuantumChannel& e1);

/// Convex combination realized by the Kraus set {sqrt(w_k) K} over all terms.
QuantumChannel mix(const std::vector<std::pair<double, QuantumChannel>>& terms);

/// Channel with Kraus {K^dag}. Trace preserving only when `e` is unital;
/// throws NotUnital otherwise.
QuantumChannel adjoint_channel(const QuantumChannel& e);

/// Right: the channel acts on the first factor, {K (x) I_anc}.
/// Left: {I_anc (x) K}.
enum class Side { Left, Right };
QuantumChannel extend_with_identity(const QuantumChannel& e, std::size_t d_anc, Side side);

/// Choi max-abs distance within `tolerance`.
bool channels_equal(const QuantumChannel& a, const QuantumChannel& b,
                    double tolerance = kChannelEqualTol);

struct ChannelClass {
  bool cptp = false;
  bool unital = false;
  bool dio = false;  ///< Delta o E == Delta o E o Delta
  bool mio = false;  ///< incoherent states stay incoherent
};

/// unital/dio/mio are false for non-square channels.
ChannelClass classify_channel(const QuantumChannel& e, double tolerance = 1e-9);

/// Computational-basis measurement {|i><i|}.
Povm basis_measurement(std::size_t d);

/// rho -> sum_x tr(M_x rho)|x><x|, output dimension = number of outcomes.
QuantumChannel measurement_as_channel(const Povm& m);

/// M'_y = sum_x p(y|x) M_x.
Povm classical_postprocess(const Povm& m, const StochasticMatrix& s);

/// {E^dag(M_x)}: measuring M after E.
Povm pullback_povm(const QuantumChannel& e, const Povm& m);

/// {M_x (x) N_y} with outcome index x * |N| + y.
Povm tensor_povm(const Povm& m, const Povm& n);

/// Element-wise p M + (1-p) N; both need the same dim and outcome count.
Povm mix_povm(double p, const Povm& m, const Povm& n);

}  // namespace mrpower
