#include "mrpower/generators.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mrpower/powers.hpp"

namespace mrpower {

std::uint64_t splitmix(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SeededRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t SeededRng::uniform_int(std::size_t lo, std::size_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection sampling keeps the draw unbiased for any span.
  const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
  std::uint64_t r = engine_();
  while (limit != 0 && r >= limit) r = engine_();
  return lo + static_cast<std::size_t>(span == 0 ? r : r % span);
}

double SeededRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex SeededRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::numbers::sqrt2;
}

RealVector SeededRng::dirichlet(std::size_t k) {
  RealVector w(k);
  for (std::size_t i = 0; i < k; ++i) {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    w[static_cast<Eigen::Index>(i)] = -std::log(u);
  }
  return w / w.sum();
}

namespace {

Matrix ginibre(std::size_t rows, std::size_t cols, SeededRng& rng) {
  Matrix z(rows, cols);
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = rng.complex_normal();
  return z;
}

QuantumChannel verified_dio(QuantumChannel ch, bool need_unital, const char* what) {
  const ChannelClass c = classify_channel(ch);
  if (!c.cptp || !c.dio || (need_unital && !c.unital)) {
    throw Error(ErrorKind::ConstructionFailed, std::string(what) + " failed its class check");
  }
  return ch;
}

}  // namespace

Matrix haar_unitary(std::size_t d, SeededRng& rng) {
  const Matrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  Matrix u = q;
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    const Complex r = qr.matrixQR()(j, j);
    const double mag = std::abs(r);
    u.col(j) *= mag > 0.0 ? r / mag : Complex(1.0);
  }
  return u;
}

Matrix random_permutation(std::size_t d, SeededRng& rng) {
  std::vector<std::size_t> perm(d);
  for (std::size_t i = 0; i < d; ++i) perm[i] = i;
  for (std::size_t i = d; i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_int(0, i - 1)]);
  Matrix p = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) p(perm[i], i) = 1.0;
  return p;
}

Matrix random_incoherent_unitary(std::size_t d, SeededRng& rng) {
  Matrix u = random_permutation(d, rng);
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    u.col(j) *= std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  }
  return u;
}

QuantumChannel random_channel(std::size_t d, std::size_t kraus_rank, ChannelKind kind,
                              SeededRng& rng) {
  if (kraus_rank < 1 || kraus_rank > d * d) {
    throw Error(ErrorKind::InvalidRank, "kraus_rank " + std::to_string(kraus_rank) +
                                            " outside [1, " + std::to_string(d * d) + "]");
  }
  std::vector<Matrix> kraus;
  kraus.reserve(kraus_rank);
  if (kind == ChannelKind::General) {
    const Matrix u = haar_unitary(d * kraus_rank, rng);
    const auto di = static_cast<Eigen::Index>(d);
    for (std::size_t k = 0; k < kraus_rank; ++k) {
      kraus.emplace_back(u.block(static_cast<Eigen::Index>(k) * di, 0, di, di));
    }
  } else {
    const RealVector w = rng.dirichlet(kraus_rank);
    for (std::size_t k = 0; k < kraus_rank; ++k) {
      kraus.emplace_back(std::sqrt(w[static_cast<Eigen::Index>(k)]) * haar_unitary(d, rng));
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel random_dio(std::size_t d, bool unital, SeededRng& rng) {
  if (d < 2) throw Error(ErrorKind::PreconditionViolation, "random_dio needs d >= 2");
  const QuantumChannel delta = dephasing_channel(d);
  if (!unital) {
    const std::size_t rank = rng.uniform_int(1, d * d);
    return verified_dio(compose(random_channel(d, rank, ChannelKind::General, rng), delta), false,
                        "random_dio");
  }
  const std::size_t parts = rng.uniform_int(1, d);
  const RealVector w = rng.dirichlet(parts);
  std::vector<std::pair<double, QuantumChannel>> terms;
  for (std::size_t k = 0; k < parts; ++k) {
    terms.emplace_back(w[static_cast<Eigen::Index>(k)],
                       compose(unitary_channel(random_permutation(d, rng)), delta));
  }
  return verified_dio(mix(terms), true, "random_dio(unital)");
}

QuantumChannel random_unital_dio_mixture(std::size_t d, SeededRng& rng) {
  if (d < 2) throw Error(ErrorKind::PreconditionViolation, "random_unital_dio_mixture needs d >= 2");
  const QuantumChannel delta = dephasing_channel(d);
  const std::size_t parts = rng.uniform_int(1, d);
  const RealVector w = rng.dirichlet(parts);
  std::vector<std::pair<double, QuantumChannel>> terms;
  for (std::size_t k = 0; k < parts; ++k) {
    const double weight = w[static_cast<Eigen::Index>(k)];
    if (rng.uniform() < 0.5) {
      terms.emplace_back(weight, unitary_channel(random_incoherent_unitary(d, rng)));
    } else {
      terms.emplace_back(weight, compose(unitary_channel(random_permutation(d, rng)), delta));
    }
  }
  return verified_dio(mix(terms), true, "random_unital_dio_mixture");
}

StochasticMatrix random_stochastic(std::size_t outcomes, std::size_t inputs, SeededRng& rng) {
  Eigen::MatrixXd p(outcomes, inputs);
  for (std::size_t i = 0; i < inputs; ++i) p.col(static_cast<Eigen::Index>(i)) = rng.dirichlet(outcomes);
  return StochasticMatrix(std::move(p));
}

Povm random_povm(std::size_t d, std::size_t n, bool incoherent, SeededRng& rng) {
  if (n < 2) throw Error(ErrorKind::PreconditionViolation, "random_povm needs n >= 2");
  if (incoherent) return classical_postprocess(basis_measurement(d), random_stochastic(n, d, rng));

  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Matrix> grams;
    Matrix total = Matrix::Zero(d, d);
    for (std::size_t x = 0; x < n; ++x) {
      const Matrix a = ginibre(d, d, rng);
      grams.emplace_back(a * a.adjoint());
      total += grams.back();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (total + total.adjoint()));
    if (es.eigenvalues().minCoeff() < 1e-12) continue;
    const Matrix inv_sqrt = es.operatorInverseSqrt();
    std::vector<HermitianOperator> el;
    el.reserve(n);
    for (const Matrix& g : grams) el.push_back(hermitian_part(inv_sqrt * g * inv_sqrt));
    return Povm(std::move(el));
  }
  throw Error(ErrorKind::SingularTotal, "POVM total stayed singular after 10 draws");
}

HermitianOperator random_density(std::size_t d, SeededRng& rng) {
  const Matrix a = ginibre(d, d, rng);
  const Matrix w = a * a.adjoint();
  return hermitian_part(w / w.trace().real());
}

Vector random_pure_state(std::size_t d, SeededRng& rng) {
  Vector psi(d);
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = rng.complex_normal();
  return psi / psi.norm();
}

std::map<std::string, QuantumChannel> paper_examples() {
  const double s = 1.0 / std::sqrt(2.0);
  Vector plus(2), minus(2), zero(2), one(2);
  plus << s, s;
  minus << s, -s;
  zero << 1.0, 0.0;
  one << 0.0, 1.0;

  std::map<std::string, QuantumChannel> out;
  // rho -> tr(rho) |+><+|
  out.emplace("prep", QuantumChannel({plus * zero.adjoint(), plus * one.adjoint()}));
  // rho -> <+|rho|+> |0><0| + <-|rho|-> |1><1|
  out.emplace("g", QuantumChannel({zero * plus.adjoint(), one * minus.adjoint()}));
  Matrix h(2, 2);
  h << s, s, s, -s;
  out.emplace("hadamard", unitary_channel(h));
  out.emplace("qubit_dephase", dephasing_channel(2));
  out.emplace("cnot2", cnot_unitary(2));
  return out;
}

}  // namespace mrpower
