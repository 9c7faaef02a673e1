#include <cmath>

#include <gtest/gtest.h>

#include "mrpower/generators.hpp"
#include "mrpower/powers.hpp"
#include "mrpower/qobjects.hpp"
#include "oracles.hpp"

using namespace mrpower;

namespace {

Matrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix h(2, 2);
  h << s, s, s, -s;
  return h;
}

Vector plus_state() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

Vector minus_state() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return v;
}

HermitianOperator random_hermitian(std::size_t d, SeededRng& rng) {
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = rng.complex_normal();
  return hermitian_part(m + m.adjoint());
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no mrpower::Error thrown";
  return ErrorKind::ParseError;
}

}  // namespace

TEST(Povm, Validation) {
  EXPECT_EQ(kind_of([] { Povm({HermitianOperator::basis_projector(2, 0)}); }), ErrorKind::InvalidPovm);
  EXPECT_EQ(kind_of([] {
              Povm({HermitianOperator::diagonal(RealVector{{1.5, 1.0}}),
                    HermitianOperator::diagonal(RealVector{{-0.5, 0.0}})});
            }),
            ErrorKind::InvalidPovm);
  EXPECT_EQ(kind_of([] { Povm({HermitianOperator::identity(2), HermitianOperator::zero(3)}); }),
            ErrorKind::DimensionMismatch);
  const Povm m({HermitianOperator::identity(2) * 0.5, HermitianOperator::identity(2) * 0.5});
  EXPECT_EQ(m.dim(), 2u);
  EXPECT_EQ(m.size(), 2u);
}

TEST(StochasticMatrix, Validation) {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.2, 0.5, 0.7;
  EXPECT_EQ(kind_of([&] { StochasticMatrix s(bad); }), ErrorKind::InvalidStochastic);
  bad << 1.1, 0.0, -0.1, 1.0;
  EXPECT_EQ(kind_of([&] { StochasticMatrix s(bad); }), ErrorKind::InvalidStochastic);
  EXPECT_EQ(StochasticMatrix::identity(3).outcomes(), 3u);
}

TEST(Channel, KrausExamples) {
  const auto id = channel_from_kraus({Matrix::Identity(2, 2)});
  EXPECT_TRUE(channels_equal(id, identity_channel(2)));
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k1(1, 1) = 1.0;
  EXPECT_TRUE(channels_equal(channel_from_kraus({k0, k1}), dephasing_channel(2)));
  EXPECT_EQ(kind_of([] { channel_from_kraus({Matrix::Identity(2, 2) * 0.5}); }),
            ErrorKind::NotTracePreserving);
}

TEST(Channel, ChoiLayoutOutputFactorFirst) {
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(0, 1) = 1.0;
  const auto reset = channel_from_kraus({a, b});
  // sum_ij E(|i><j|) (x) |i><j| with E(|i><j|) = delta_ij |0><0|
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = 1.0;
  EXPECT_LT(max_abs_diff(reset.choi().matrix(), expected), 1e-15);
}

TEST(Channel, ChoiKrausRoundTrip) {
  SeededRng rng(31);
  for (std::size_t d : {2u, 3u}) {
    for (int t = 0; t < 100; ++t) {
      const auto e = random_channel(d, 1 + t % (d * d), ChannelKind::General, rng);
      const auto rebuilt = channel_from_choi(e.choi(), d, d);
      EXPECT_LT(max_abs_diff(rebuilt.choi(), e.choi()), 1e-9);
    }
  }
}

TEST(Channel, ApplyExamples) {
  SeededRng rng(32);
  const auto rho = random_density(3, rng);
  EXPECT_LT(max_abs_diff(apply(identity_channel(3), rho), rho), 1e-15);
  EXPECT_LT(max_abs_diff(apply(dephasing_channel(2), HermitianOperator::projector(plus_state())),
                         HermitianOperator::identity(2) * 0.5),
            1e-15);
  for (int t = 0; t < 50; ++t) {
    const auto e = random_channel(3, 3, ChannelKind::General, rng);
    EXPECT_NEAR(apply(e, random_density(3, rng)).trace(), 1.0, 1e-12);
  }
}

TEST(Channel, AdjointApplyExamples) {
  SeededRng rng(33);
  const auto x = random_hermitian(2, rng);
  EXPECT_LT(max_abs_diff(adjoint_apply(identity_channel(2), x), x), 1e-15);
  const Matrix u = haar_unitary(2, rng);
  EXPECT_LT(max_abs_diff(adjoint_apply(unitary_channel(u), x).matrix(), u.adjoint() * x.matrix() * u),
            1e-14);
  for (int t = 0; t < 50; ++t) {
    const auto e = random_channel(3, 2, ChannelKind::General, rng);
    EXPECT_LT(max_abs_diff(adjoint_apply(e, HermitianOperator::identity(3)),
                           HermitianOperator::identity(3)),
              1e-12);
  }
}

TEST(Channel, AdjointDuality) {
  SeededRng rng(34);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 2;
    const auto e = random_channel(d, 1 + t % 4, ChannelKind::General, rng);
    const auto x = random_hermitian(d, rng);
    const auto y = random_hermitian(d, rng);
    const Complex lhs = (x.matrix() * apply(e, y).matrix()).trace();
    const Complex rhs = (adjoint_apply(e, x).matrix() * y.matrix()).trace();
    EXPECT_LT(std::abs(lhs - rhs), 1e-9);
  }
}

TEST(Channel, Compose) {
  SeededRng rng(35);
  const auto delta = dephasing_channel(3);
  EXPECT_TRUE(channels_equal(compose(delta, delta), delta, 1e-10));
  for (int t = 0; t < 30; ++t) {
    const auto e1 = random_channel(3, 3, ChannelKind::General, rng);
    const auto e2 = random_channel(3, 4, ChannelKind::General, rng);
    EXPECT_TRUE(channels_equal(compose(identity_channel(3), e1), e1, 1e-10));
    const auto rho = random_density(3, rng);
    EXPECT_LT(max_abs_diff(apply(compose(e2, e1), rho), apply(e2, apply(e1, rho))), 1e-12);
  }
  EXPECT_EQ(kind_of([&] { compose(identity_channel(2), delta); }), ErrorKind::DimensionMismatch);
}

TEST(Channel, CompactKeepsChannel) {
  SeededRng rng(36);
  std::vector<std::pair<double, QuantumChannel>> terms;
  for (int k = 0; k < 6; ++k) terms.emplace_back(1.0 / 6.0, random_channel(2, 4, ChannelKind::General, rng));
  const auto big = mix(terms);
  ASSERT_EQ(big.kraus().size(), 24u);
  const auto small = compact(big);
  EXPECT_LE(small.kraus().size(), 4u);
  EXPECT_TRUE(channels_equal(small, big, 1e-10));
}

TEST(Channel, ExtendWithIdentity) {
  SeededRng rng(37);
  EXPECT_TRUE(channels_equal(extend_with_identity(identity_channel(2), 3, Side::Right),
                             identity_channel(6)));
  for (int t = 0; t < 20; ++t) {
    const auto e = random_channel(2, 3, ChannelKind::General, rng);
    const auto x = random_density(2, rng);
    const auto y = random_density(3, rng);
    const auto right = extend_with_identity(e, 3, Side::Right);
    EXPECT_LT(max_abs_diff(apply(right, tensor_product(x, y)), tensor_product(apply(e, x), y)), 1e-12);
    const auto left = extend_with_identity(e, 3, Side::Left);
    EXPECT_LT(max_abs_diff(apply(left, tensor_product(y, x)), tensor_product(y, apply(e, x))), 1e-12);
    EXPECT_NEAR(apply(right, random_density(6, rng)).trace(), 1.0, 1e-12);
  }
}

TEST(Channel, AdjointChannelNeedsUnital) {
  SeededRng rng(38);
  const auto u = random_channel(3, 3, ChannelKind::Unital, rng);
  const auto ud = adjoint_channel(u);
  const auto x = random_hermitian(3, rng);
  EXPECT_LT(max_abs_diff(apply(ud, x), adjoint_apply(u, x)), 1e-12);
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(0, 1) = 1.0;
  EXPECT_EQ(kind_of([&] { adjoint_channel(channel_from_kraus({a, b})); }), ErrorKind::NotUnital);
}

TEST(Classify, Examples) {
  const auto c = classify_channel(dephasing_channel(3));
  EXPECT_TRUE(c.cptp && c.unital && c.dio && c.mio);
  const auto h = classify_channel(unitary_channel(hadamard()));
  EXPECT_TRUE(h.cptp && h.unital);
  EXPECT_FALSE(h.dio);
  EXPECT_FALSE(h.mio);
  SeededRng rng(39);
  for (int t = 0; t < 30; ++t) {
    const auto e = random_channel(3, 1 + t % 9, ChannelKind::General, rng);
    EXPECT_TRUE(classify_channel(compose(e, dephasing_channel(3))).dio);
  }
  // Resetting to |+> keeps incoherent measurements incoherent but creates coherence.
  const auto prep = paper_examples().at("prep");
  const auto p = classify_channel(prep);
  EXPECT_TRUE(p.dio);
  EXPECT_FALSE(p.mio);
  EXPECT_FALSE(p.unital);
}

TEST(Measurement, BasisMeasurementIsDephasing) {
  SeededRng rng(40);
  const auto n = measurement_as_channel(basis_measurement(3));
  for (int t = 0; t < 20; ++t) {
    const auto rho = random_density(3, rng);
    EXPECT_LT(max_abs_diff(apply(n, rho), dephase(rho)), 1e-14);
  }
}

TEST(Measurement, TrivialPovmAndDiagonalOutput) {
  SeededRng rng(41);
  const Povm half({HermitianOperator::identity(2) * 0.5, HermitianOperator::identity(2) * 0.5});
  const auto n = measurement_as_channel(half);
  for (int t = 0; t < 20; ++t) {
    EXPECT_LT(max_abs_diff(apply(n, random_density(2, rng)), HermitianOperator::identity(2) * 0.5),
              1e-14);
    const auto m = random_povm(3, 4, false, rng);
    const auto out = apply(measurement_as_channel(m), random_density(3, rng));
    EXPECT_EQ(out.dim(), 4u);
    EXPECT_LT(max_off_diagonal(out), 1e-15);
  }
}

TEST(Measurement, ClassicalPostprocess) {
  SeededRng rng(42);
  const auto m = random_povm(3, 3, false, rng);
  const auto same = classical_postprocess(m, StochasticMatrix::identity(3));
  for (std::size_t x = 0; x < 3; ++x) EXPECT_LT(max_abs_diff(same[x], m[x]), 1e-15);
  const auto merged = classical_postprocess(m, StochasticMatrix(Eigen::MatrixXd::Ones(1, 3)));
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_LT(max_abs_diff(merged[0], HermitianOperator::identity(3)), 1e-9);
  for (int t = 0; t < 20; ++t) {
    const auto out = classical_postprocess(m, random_stochastic(5, 3, rng));
    HermitianOperator total = HermitianOperator::zero(3);
    for (const auto& e : out.elements()) total += e;
    EXPECT_LT(max_abs_diff(total, HermitianOperator::identity(3)), 1e-9);
  }
}

TEST(Measurement, PullbackExamples) {
  const auto basis = basis_measurement(2);
  const auto same = pullback_povm(identity_channel(2), basis);
  for (std::size_t x = 0; x < 2; ++x) EXPECT_LT(max_abs_diff(same[x], basis[x]), 1e-15);

  const auto h = pullback_povm(unitary_channel(hadamard()), basis);
  EXPECT_LT(max_abs_diff(h[0], HermitianOperator::projector(plus_state())), 1e-14);
  EXPECT_LT(max_abs_diff(h[1], HermitianOperator::projector(minus_state())), 1e-14);

  SeededRng rng(43);
  for (int t = 0; t < 30; ++t) {
    const auto e = random_channel(3, 2, ChannelKind::General, rng);
    const auto m = random_povm(3, 4, false, rng);
    const auto rho = random_density(3, rng);
    const auto pulled = pullback_povm(e, m);
    const auto out = apply(e, rho);
    for (std::size_t x = 0; x < m.size(); ++x) {
      const Complex lhs = (pulled[x].matrix() * rho.matrix()).trace();
      const Complex rhs = (m[x].matrix() * out.matrix()).trace();
      EXPECT_LT(std::abs(lhs - rhs), 1e-12);
    }
  }
}

TEST(Measurement, IncoherentOutcomesIgnoreCoherences) {
  SeededRng rng(44);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 3;
    const auto m = random_povm(d, 2 + t % 4, true, rng);
    const auto rho = random_density(d, rng);
    const auto drho = dephase(rho);
    for (const auto& e : m.elements()) {
      const Complex a = (e.matrix() * rho.matrix()).trace();
      const Complex b = (e.matrix() * drho.matrix()).trace();
      EXPECT_LT(std::abs(a - b), 1e-10);
    }
  }
}

TEST(Measurement, TensorAndMix) {
  SeededRng rng(45);
  const auto m = random_povm(2, 2, false, rng);
  const auto n = random_povm(3, 3, false, rng);
  const auto mn = tensor_povm(m, n);
  ASSERT_EQ(mn.size(), 6u);
  EXPECT_EQ(mn.dim(), 6u);
  EXPECT_LT(oracle::max_abs(mn[1 * 3 + 2].matrix() - oracle::kron(m[1].matrix(), n[2].matrix())), 1e-15);
  const auto m2 = random_povm(2, 2, false, rng);
  const auto mixed = mix_povm(0.3, m, m2);
  EXPECT_LT(max_abs_diff(mixed[0], m[0] * 0.3 + m2[0] * 0.7), 1e-15);
  EXPECT_EQ(kind_of([&] { mix_povm(0.5, m, n); }), ErrorKind::DimensionMismatch);
}
