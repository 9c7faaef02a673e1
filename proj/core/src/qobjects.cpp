#include "mrpower/qobjects.hpp"

#include <cmath>
#include <string>

namespace mrpower {

namespace {

HermitianOperator choi_from_kraus(const std::vector<Matrix>& kraus) {
  const Eigen::Index din = kraus.front().cols();
  const Eigen::Index dout = kraus.front().rows();
  Matrix choi = Matrix::Zero(dout * din, dout * din);
  Vector v(dout * din);
  for (const Matrix& k : kraus) {
    for (Eigen::Index a = 0; a < dout; ++a)
      for (Eigen::Index i = 0; i < din; ++i) v[a * din + i] = k(a, i);
    choi.noalias() += v * v.adjoint();
  }
  return hermitian_part(choi);
}

void check_outcome_match(const Povm& a, const Povm& b, const char* what) {
  if (a.dim() != b.dim() || a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": POVMs differ in dim or outcome count");
  }
}

}  // namespace

Povm::Povm(std::vector<HermitianOperator> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorKind::InvalidPovm, "POVM needs at least one element");
  const std::size_t d = elements_.front().dim();
  Matrix total = Matrix::Zero(d, d);
  for (std::size_t x = 0; x < elements_.size(); ++x) {
    if (elements_[x].dim() != d) {
      throw Error(ErrorKind::DimensionMismatch, "POVM element " + std::to_string(x) +
                                                    " has dim " +
                                                    std::to_string(elements_[x].dim()));
    }
    if (!is_psd(elements_[x])) {
      throw Error(ErrorKind::InvalidPovm, "element " + std::to_string(x) + " is not PSD");
    }
    total += elements_[x].matrix();
  }
  const double dev = max_abs_diff(total, Matrix::Identity(d, d));
  if (dev > kCompletenessTol) {
    throw Error(ErrorKind::InvalidPovm, "elements sum to I only within " + std::to_string(dev));
  }
}

StochasticMatrix::StochasticMatrix(Eigen::MatrixXd entries) : p_(std::move(entries)) {
  if (p_.rows() < 1 || p_.cols() < 1) {
    throw Error(ErrorKind::InvalidStochastic, "empty stochastic matrix");
  }
  if (p_.minCoeff() < -1e-12) {
    throw Error(ErrorKind::InvalidStochastic, "negative probability");
  }
  for (Eigen::Index i = 0; i < p_.cols(); ++i) {
    const double s = p_.col(i).sum();
    if (std::abs(s - 1.0) > kStochasticTol) {
      throw Error(ErrorKind::InvalidStochastic,
                  "column " + std::to_string(i) + " sums to " + std::to_string(s));
    }
  }
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
  return StochasticMatrix(Eigen::MatrixXd::Identity(n, n));
}

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus)
    : kraus_(std::move(kraus)), choi_(HermitianOperator::zero(1)) {
  if (kraus_.empty()) throw Error(ErrorKind::DimensionMismatch, "empty Kraus list");
  const Eigen::Index rows = kraus_.front().rows();
  const Eigen::Index cols = kraus_.front().cols();
  if (rows < 1 || cols < 1) throw Error(ErrorKind::DimensionMismatch, "empty Kraus operator");
  Matrix completeness = Matrix::Zero(cols, cols);
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    if (kraus_[k].rows() != rows || kraus_[k].cols() != cols) {
      throw Error(ErrorKind::DimensionMismatch,
                  "Kraus operator " + std::to_string(k) + " has inconsistent shape");
    }
    completeness.noalias() += kraus_[k].adjoint() * kraus_[k];
  }
  const double dev = max_abs_diff(completeness, Matrix::Identity(cols, cols));
  if (dev > kTracePreservingTol) {
    throw Error(ErrorKind::NotTracePreserving,
                "sum K^dag K deviates from I by " + std::to_string(dev));
  }
  choi_ = choi_from_kraus(kraus_);
}

QuantumChannel channel_from_kraus(std::vector<Matrix> kraus) {
  return QuantumChannel(std::move(kraus));
}

QuantumChannel channel_from_choi(const HermitianOperator& choi, std::size_t dim_in,
                                 std::size_t dim_out) {
  if (choi.dim() != dim_in * dim_out) {
    throw Error(ErrorKind::DimensionMismatch, "Choi dim != dim_in * dim_out");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(choi.matrix());
  if (es.eigenvalues().minCoeff() < -tol::psd) {
    throw Error(ErrorKind::NotPsd, "Choi matrix is not PSD");
  }
  const auto din = static_cast<Eigen::Index>(dim_in);
  const auto dout = static_cast<Eigen::Index>(dim_out);
  std::vector<Matrix> kraus;
  for (Eigen::Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
    const double lambda = es.eigenvalues()[k];
    if (lambda <= tol::eig_clip) continue;
    const Vector v = std::sqrt(lambda) * es.eigenvectors().col(k);
    Matrix op(dout, din);
    for (Eigen::Index a = 0; a < dout; ++a)
      for (Eigen::Index i = 0; i < din; ++i) op(a, i) = v[a * din + i];
    kraus.push_back(std::move(op));
  }
  if (kraus.empty()) throw Error(ErrorKind::NotTracePreserving, "zero Choi matrix");
  return QuantumChannel(std::move(kraus));
}

QuantumChannel identity_channel(std::size_t d) {
  return QuantumChannel({Matrix::Identity(d, d)});
}

QuantumChannel dephasing_channel(std::size_t d) {
  std::vector<Matrix> kraus;
  kraus.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix k = Matrix::Zero(d, d);
    k(i, i) = 1.0;
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel unitary_channel(const Matrix& u) { return QuantumChannel({u}); }

HermitianOperator apply(const QuantumChannel& e, const HermitianOperator& x) {
  if (x.dim() != e.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch, "apply: operator dim " + std::to_string(x.dim()) +
                                                  " != dim_in " + std::to_string(e.dim_in()));
  }
  Matrix out = Matrix::Zero(e.dim_out(), e.dim_out());
  for (const Matrix& k : e.kraus()) out.noalias() += k * x.matrix() * k.adjoint();
  return hermitian_part(out);
}

HermitianOperator adjoint_apply(const QuantumChannel& e, const HermitianOperator& x) {
  if (x.dim() != e.dim_out()) {
    throw Error(ErrorKind::DimensionMismatch,
                "adjoint_apply: operator dim " + std::to_string(x.dim()) + " != dim_out " +
                    std::to_string(e.dim_out()));
  }
  Matrix out = Matrix::Zero(e.dim_in(), e.dim_in());
  for (const Matrix& k : e.kraus()) out.noalias() += k.adjoint() * x.matrix() * k;
  return hermitian_part(out);
}

QuantumChannel compact(const QuantumChannel& e) {
  if (e.kraus().size() <= e.dim_in() * e.dim_out()) return e;
  return channel_from_choi(e.choi(), e.dim_in(), e.dim_out());
}

QuantumChannel compose(const QuantumChannel& e2, const QuantumChannel& e1) {
  if (e1.dim_out() != e2.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch, "compose: dim_out(E1) = " +
                                                  std::to_string(e1.dim_out()) +
                                                  " != dim_in(E2) = " +
                                                  std::to_string(e2.dim_in()));
  }
  const QuantumChannel a = compact(e2);
  const QuantumChannel b = compact(e1);
  std::vector<Matrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const Matrix& k2 : a.kraus())
    for (const Matrix& k1 : b.kraus()) kraus.emplace_back(k2 * k1);
  return compact(QuantumChannel(std::move(kraus)));
}

QuantumChannel mix(const std::vector<std::pair<double, QuantumChannel>>& terms) {
  if (terms.empty()) throw Error(ErrorKind::DimensionMismatch, "mix: no terms");
  std::vector<Matrix> kraus;
  for (const auto& [w, ch] : terms) {
    if (w < 0.0) throw Error(ErrorKind::PreconditionViolation, "mix: negative weight");
    if (ch.dim_in() != terms.front().second.dim_in() ||
        ch.dim_out() != terms.front().second.dim_out()) {
      throw Error(ErrorKind::DimensionMismatch, "mix: channels differ in shape");
    }
    if (w == 0.0) continue;
    for (const Matrix& k : ch.kraus()) kraus.emplace_back(std::sqrt(w) * k);
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel adjoint_channel(const QuantumChannel& e) {
  if (!e.is_square()) throw Error(ErrorKind::NotUnital, "adjoint of a non-square channel");
  const HermitianOperator out = apply(e, HermitianOperator::identity(e.dim_in()));
  const double dev = max_abs_diff(out.matrix(), Matrix::Identity(e.dim_out(), e.dim_out()));
  if (dev > kTracePreservingTol) {
    throw Error(ErrorKind::NotUnital, "E(I) deviates from I by " + std::to_string(dev));
  }
  std::vector<Matrix> kraus;
  kraus.reserve(e.kraus().size());
  for (const Matrix& k : e.kraus()) kraus.emplace_back(k.adjoint());
  return QuantumChannel(std::move(kraus));
}

QuantumChannel extend_with_identity(const QuantumChannel& e, std::size_t d_anc, Side side) {
  if (d_anc < 1) throw Error(ErrorKind::DimensionMismatch, "ancilla dimension must be >= 1");
  const Matrix id = Matrix::Identity(d_anc, d_anc);
  std::vector<Matrix> kraus;
  kraus.reserve(e.kraus().size());
  for (const Matrix& k : e.kraus()) {
    kraus.push_back(side == Side::Right ? kron(k, id) : kron(id, k));
  }
  return QuantumChannel(std::move(kraus));
}

bool channels_equal(const QuantumChannel& a, const QuantumChannel& b, double tolerance) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) return false;
  return max_abs_diff(a.choi(), b.choi()) <= tolerance;
}

ChannelClass classify_channel(const QuantumChannel& e, double tolerance) {
  ChannelClass out;
  // Completeness was enforced at construction; re-measure against `tolerance`.
  Matrix completeness = Matrix::Zero(e.dim_in(), e.dim_in());
  for (const Matrix& k : e.kraus()) completeness.noalias() += k.adjoint() * k;
  out.cptp = max_abs_diff(completeness, Matrix::Identity(e.dim_in(), e.dim_in())) <= tolerance &&
             is_psd(e.choi());
  if (!e.is_square()) return out;

  const std::size_t d = e.dim_in();
  out.unital = max_abs_diff(apply(e, HermitianOperator::identity(d)).matrix(),
                            Matrix::Identity(d, d)) <= tolerance;

  const QuantumChannel delta = dephasing_channel(d);
  const QuantumChannel de = compose(delta, e);
  out.dio = max_abs_diff(de.choi(), compose(de, delta).choi()) <= tolerance;

  out.mio = true;
  for (std::size_t i = 0; i < d && out.mio; ++i) {
    const HermitianOperator y = apply(e, HermitianOperator::basis_projector(d, i));
    out.mio = max_off_diagonal(y) <= tolerance;
  }
  return out;
}

Povm basis_measurement(std::size_t d) {
  std::vector<HermitianOperator> el;
  el.reserve(d);
  for (std::size_t i = 0; i < d; ++i) el.push_back(HermitianOperator::basis_projector(d, i));
  return Povm(std::move(el));
}

QuantumChannel measurement_as_channel(const Povm& m) {
  const auto d = static_cast<Eigen::Index>(m.dim());
  const auto n = static_cast<Eigen::Index>(m.size());
  std::vector<Matrix> kraus;
  for (Eigen::Index x = 0; x < n; ++x) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m[x].matrix());
    for (Eigen::Index k = 0; k < d; ++k) {
      const double lambda = es.eigenvalues()[k];
      if (lambda <= tol::eig_clip) continue;
      Matrix op = Matrix::Zero(n, d);
      op.row(x) = std::sqrt(lambda) * es.eigenvectors().col(k).adjoint();
      kraus.push_back(std::move(op));
    }
  }
  if (kraus.empty()) throw Error(ErrorKind::InvalidPovm, "POVM has no support");
  return QuantumChannel(std::move(kraus));
}

Povm classical_postprocess(const Povm& m, const StochasticMatrix& s) {
  if (s.inputs() != m.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "stochastic matrix has " + std::to_string(s.inputs()) + " inputs, POVM has " +
                    std::to_string(m.size()) + " outcomes");
  }
  std::vector<HermitianOperator> out;
  out.reserve(s.outcomes());
  for (std::size_t y = 0; y < s.outcomes(); ++y) {
    HermitianOperator acc = HermitianOperator::zero(m.dim());
    for (std::size_t x = 0; x < m.size(); ++x) {
      if (s(y, x) != 0.0) acc += m[x] * s(y, x);
    }
    out.push_back(std::move(acc));
  }
  return Povm(std::move(out));
}

Povm pullback_povm(const QuantumChannel& e, const Povm& m) {
  if (m.dim() != e.dim_out()) {
    throw Error(ErrorKind::DimensionMismatch, "pullback_povm: POVM dim " +
                                                  std::to_string(m.dim()) + " != dim_out " +
                                                  std::to_string(e.dim_out()));
  }
  std::vector<HermitianOperator> out;
  out.reserve(m.size());
  for (const HermitianOperator& mx : m.elements()) out.push_back(adjoint_apply(e, mx));
  return Povm(std::move(out));
}

Povm tensor_povm(const Povm& m, const Povm& n) {
  std::vector<HermitianOperator> out;
  out.reserve(m.size() * n.size());
  for (const HermitianOperator& mx : m.elements())
    for (const HermitianOperator& ny : n.elements()) out.push_back(tensor_product(mx, ny));
  return Povm(std::move(out));
}

Povm mix_povm(double p, const Povm& m, const Povm& n) {
  check_outcome_match(m, n, "mix_povm");
  if (p < 0.0 || p > 1.0) throw Error(ErrorKind::PreconditionViolation, "mix_povm: p not in [0,1]");
  std::vector<HermitianOperator> out;
  out.reserve(m.size());
  for (std::size_t x = 0; x < m.size(); ++x) out.push_back(m[x] * p + n[x] * (1.0 - p));
  return Povm(std::move(out));
}

}  // namespace mrpower
