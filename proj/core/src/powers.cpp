#include "mrpower/powers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mrpower/resources.hpp"

namespace mrpower {

namespace {

void require_square(const QuantumChannel& e, const char* what) {
  if (!e.is_square()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " needs dim_in == dim_out, got " +
                    std::to_string(e.dim_in()) + " -> " + std::to_string(e.dim_out()));
  }
}

void require_cap(const QuantumChannel& e, std::size_t cap) {
  if (e.dim_in() > cap) {
    throw Error(ErrorKind::UnsupportedScale, "conversion is capped at d = " +
                                                 std::to_string(cap) + ", got d = " +
                                                 std::to_string(e.dim_in()));
  }
}

double averaged_bipartite_bound(const QuantumChannel& composite, std::size_t d,
                                std::vector<double>* per_element) {
  const std::size_t dd = d * d;
  double total = 0.0;
  for (std::size_t ij = 0; ij < dd; ++ij) {
    const HermitianOperator element =
        adjoint_apply(composite, HermitianOperator::basis_projector(dd, ij));
    const double bound = ere_lower_bound(element, {d, d});
    if (per_element != nullptr) per_element->push_back(bound);
    total += bound;
  }
  return total / static_cast<double>(dd);
}

}  // namespace

double measurement_cohering_power(const QuantumChannel& e) {
  require_square(e, "measurement_cohering_power");
  return measurement_coherence(pullback_povm(e, basis_measurement(e.dim_out())));
}

double state_cohering_power(const QuantumChannel& e) {
  require_square(e, "state_cohering_power");
  const std::size_t d = e.dim_in();
  double best = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double c = relative_entropy_of_coherence(apply(e, HermitianOperator::basis_projector(d, i)));
    best = (i == 0) ? c : std::max(best, c);
  }
  return best;
}

Matrix cnot_matrix(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::PreconditionViolation, "CNOT needs d >= 2");
  const auto n = static_cast<Eigen::Index>(d * d);
  Matrix u = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      u(static_cast<Eigen::Index>(i * d + (i + j) % d), static_cast<Eigen::Index>(i * d + j)) = 1.0;
  return u;
}

QuantumChannel cnot_unitary(std::size_t d) { return unitary_channel(cnot_matrix(d)); }

QuantumChannel conversion_channel(const QuantumChannel& e, std::size_t cap) {
  require_square(e, "conversion_channel");
  require_cap(e, cap);
  const std::size_t d = e.dim_in();
  const QuantumChannel cnot_dag = unitary_channel(cnot_matrix(d).adjoint());
  const QuantumChannel inner = compose(extend_with_identity(e, d, Side::Right), cnot_dag);
  return compose(dephasing_channel(d * d), inner);
}

ConversionCertificate conversion_ent_lower_bound(const QuantumChannel& e, std::size_t cap) {
  const QuantumChannel conv = conversion_channel(e, cap);
  ConversionCertificate cert;
  cert.cohering_power = measurement_cohering_power(e);
  cert.per_element_bounds.reserve(e.dim_in() * e.dim_in());
  cert.avg_ere_lower_bound = averaged_bipartite_bound(conv, e.dim_in(), &cert.per_element_bounds);
  cert.gap = std::abs(cert.cohering_power - cert.avg_ere_lower_bound);
  return cert;
}

double composite_ent_lower_bound(const QuantumChannel& e, const QuantumChannel& k,
                                 const QuantumChannel& l) {
  require_square(e, "composite_ent_lower_bound");
  const std::size_t d = e.dim_in();
  const std::size_t dd = d * d;
  if (!k.is_square() || k.dim_in() != dd || !l.is_square() || l.dim_in() != dd) {
    throw Error(ErrorKind::DimensionMismatch, "K and L must act on dimension d^2 = " +
                                                  std::to_string(dd));
  }
  const ChannelClass kc = classify_channel(k);
  if (!kc.dio) throw Error(ErrorKind::PreconditionViolation, "K is not DIO");
  const ChannelClass lc = classify_channel(l);
  if (!lc.unital || !lc.dio) {
    throw Error(ErrorKind::PreconditionViolation, "L is not a unital DIO channel");
  }
  const QuantumChannel middle = compose(k, compose(extend_with_identity(e, d, Side::Right), l));
  return averaged_bipartite_bound(compose(dephasing_channel(dd), middle), d, nullptr);
}

DualityResult duality_check(const QuantumChannel& e, double tolerance) {
  require_square(e, "duality_check");
  const QuantumChannel adj = adjoint_channel(e);
  const std::size_t d = e.dim_in();

  DualityResult r;
  r.c_g = state_cohering_power(e);
  r.c_adj = measurement_cohering_power(adj);
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    sum += relative_entropy_of_coherence(apply(e, HermitianOperator::basis_projector(d, i)));
  }
  r.c_r_average = sum / static_cast<double>(d);
  r.sandwich_ok = r.c_g / static_cast<double>(d) - tolerance <= r.c_adj &&
                  r.c_adj <= r.c_g + tolerance;
  return r;
}

QuantumChannel square_measurement_channel(const Povm& m) {
  const std::size_t d = m.dim();
  const std::size_t n = m.size();
  if (n > d) {
    throw Error(ErrorKind::UnsupportedScale,
                "square embedding needs outcomes <= dim (n = " + std::to_string(n) +
                    ", d = " + std::to_string(d) + ")");
  }
  const QuantumChannel raw = measurement_as_channel(m);
  std::vector<Matrix> kraus;
  kraus.reserve(raw.kraus().size());
  for (const Matrix& k : raw.kraus()) {
    Matrix padded = Matrix::Zero(d, d);
    padded.topRows(n) = k;
    kraus.push_back(std::move(padded));
  }
  return QuantumChannel(std::move(kraus));
}

}  // namespace mrpower
