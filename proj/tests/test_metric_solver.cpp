#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace qhf;
using qhf::fixtures::brute_force_solution_dimension;
using qhf::fixtures::random_real_spectrum;
using qhf::fixtures::uniform;

namespace {

const DenseMatrix kH11 = DenseMatrix::from_rows({{0, -2}, {1, 3}});
const DenseMatrix kTheta11 = DenseMatrix::from_rows({{2, 3}, {3, 5}});

}  // namespace

TEST(LeftEigenbasis, GoldenTwoLevel) {
  const LeftEigenbasis b = left_eigenbasis(kH11);
  ASSERT_EQ(b.values.size(), 2u);
  EXPECT_NEAR(b.values[0], 1.0, 1e-12);
  EXPECT_NEAR(b.values[1], 2.0, 1e-12);
  const auto& l = b.left_vectors;
  EXPECT_NEAR(std::abs(l(0, 0) - 1 / std::sqrt(2.0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(l(1, 0) - 1 / std::sqrt(2.0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(l(0, 1) - 1 / std::sqrt(5.0)), 0, 1e-12);
  EXPECT_NEAR(std::abs(l(1, 1) - 2 / std::sqrt(5.0)), 0, 1e-12);
}

TEST(LeftEigenbasis, HermitianDiagonalGivesStandardBasis) {
  const LeftEigenbasis b = left_eigenbasis(DenseMatrix::diagonal({1.0, 2.0}));
  EXPECT_LT(max_abs_difference(b.left_vectors, DenseMatrix::identity(2)), 1e-15);
}

TEST(LeftEigenbasis, Errors) {
  try {
    left_eigenbasis(DenseMatrix::from_rows({{0, -1}, {1, 0}}));
    FAIL();
  } catch (const ComplexSpectrum& e) {
    EXPECT_EQ(e.eigenvalues().size(), 2u);
  }
  try {
    left_eigenbasis(DenseMatrix::identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NearDefective);
  }
}

TEST(LeftEigenbasis, ConventionProperty) {
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 1 + trial % 5;
    const DenseMatrix h = random_real_spectrum(n);
    const LeftEigenbasis b = left_eigenbasis(h);
    const auto& l = b.left_vectors.eigen();
    Eigen::VectorXcd e(n);
    for (Index k = 0; k < n; ++k) e(k) = b.values[std::size_t(k)];
    EXPECT_LT((h.eigen().adjoint() * l - l * e.asDiagonal()).norm(), 1e-10 * frobenius_norm(h));
    for (Index c = 0; c < n; ++c) {
      EXPECT_NEAR(l.col(c).norm(), 1.0, 1e-14);
      Index first = 0;
      while (std::abs(l(first, c)) <= 1e-12) ++first;
      EXPECT_EQ(l(first, c).imag(), 0.0);
      EXPECT_GT(l(first, c).real(), 0.0);
    }
  }
}

TEST(MetricFromWeights, ReproducesGoldenMetric) {
  const LeftEigenbasis b = left_eigenbasis(kH11);
  const WeightFit fit = fit_weights(b, MetricCertificate::certify(kTheta11));
  const MetricCertificate theta = metric_from_weights({b, fit.weights});
  EXPECT_LT(max_abs_difference(theta.theta(), kTheta11), 1e-10);
  EXPECT_LT(quasi_hermiticity_residual(kH11, theta), 1e-10);
}

TEST(MetricFromWeights, EqualWeightsOnHermitianDiagonal) {
  const LeftEigenbasis b = left_eigenbasis(DenseMatrix::diagonal({1.0, 2.0, 4.0}));
  const MetricCertificate theta = metric_from_weights({b, {2.5, 2.5, 2.5}});
  EXPECT_LT(max_abs_difference(theta.theta(), Complex(2.5) * DenseMatrix::identity(3)), 1e-15);
}

TEST(MetricFromWeights, AmbiguityEveryWeightWorks) {
  const LeftEigenbasis b = left_eigenbasis(kH11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<double> w{uniform(0.01, 10), uniform(0.01, 10)};
    const MetricCertificate theta = metric_from_weights({b, w});
    EXPECT_LT(quasi_hermiticity_residual(kH11, theta), 1e-10);
    EXPECT_LT(relative_difference(theta.cholesky_factor() * adjoint(theta.cholesky_factor()),
                                  theta.theta()),
              1e-10);
  }
}

TEST(MetricFromWeights, RejectsBadWeights) {
  const LeftEigenbasis b = left_eigenbasis(kH11);
  EXPECT_THROW(metric_from_weights({b, {1.0, 0.0}}), Error);
  EXPECT_THROW(metric_from_weights({b, {1.0, -1.0}}), Error);
  EXPECT_THROW(metric_from_weights({b, {1.0}}), Error);
}

TEST(MetricFromWeights, RandomGeneratorsStayQuasiHermitian) {
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + trial % 5;
    const DenseMatrix h = random_real_spectrum(n);
    MetricFamily f = unit_weight_family(h);
    for (auto& w : f.weights) w = uniform(0.1, 5);
    const MetricCertificate theta = metric_from_weights(f);
    EXPECT_LT(quasi_hermiticity_residual(h, theta), 1e-10);
  }
}

TEST(SolutionSpaceDimension, Examples) {
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix h = example::hamiltonian({uniform(1e-9, 2), uniform(1e-9, 2)});
    EXPECT_EQ(brute_force_solution_dimension(h), 2);
    EXPECT_EQ(solution_space_dimension(h), 2);
  }
  EXPECT_EQ(brute_force_solution_dimension(DenseMatrix::identity(2)), 4);
  EXPECT_EQ(solution_space_dimension(DenseMatrix::identity(2)), 4);
  EXPECT_EQ(brute_force_solution_dimension(DenseMatrix::diagonal({1.0, 2.0})), 2);
  EXPECT_EQ(solution_space_dimension(DenseMatrix::diagonal({1.0, 2.0})), 2);
}

TEST(SolutionSpaceDimension, DistinctRealSpectrumGivesN) {
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + trial % 4;
    const DenseMatrix h = random_real_spectrum(n);
    EXPECT_EQ(brute_force_solution_dimension(h), int(n));
    EXPECT_EQ(solution_space_dimension(h), int(n));
  }
}

TEST(SolutionSpaceDimension, Errors) {
  try {
    solution_space_dimension(DenseMatrix::identity(9));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
  EXPECT_EQ(solution_space_dimension(DenseMatrix::identity(9), 9), 81);
  EXPECT_THROW(solution_space_dimension(DenseMatrix::from_rows({{0, -1}, {1, 0}})), ComplexSpectrum);
}

TEST(FitWeights, Examples) {
  const WeightFit golden = fit_weights(left_eigenbasis(kH11), MetricCertificate::certify(kTheta11));
  EXPECT_NEAR(golden.weights[0], 2.0, 1e-12);
  EXPECT_NEAR(golden.weights[1], 5.0, 1e-12);
  EXPECT_LT(golden.residual, 1e-10);

  const WeightFit unit = fit_weights(left_eigenbasis(DenseMatrix::diagonal({1.0, 2.0})),
                                     MetricCertificate::identity(2));
  EXPECT_NEAR(unit.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(unit.weights[1], 1.0, 1e-15);

  try {
    fit_weights(left_eigenbasis(kH11), MetricCertificate::identity(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TargetOutsideFamily);
  }
  EXPECT_THROW(fit_weights(left_eigenbasis(kH11), MetricCertificate::identity(3)), Error);
}

TEST(FitWeights, RoundTripsKnownWeights) {
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + trial % 5;
    const LeftEigenbasis b = left_eigenbasis(random_real_spectrum(n));
    std::vector<double> w;
    for (Index k = 0; k < n; ++k) w.push_back(uniform(0.1, 5));
    const MetricCertificate theta = metric_from_weights({b, w});
    const WeightFit fit = fit_weights(b, theta);
    for (Index k = 0; k < n; ++k) EXPECT_NEAR(fit.weights[std::size_t(k)], w[std::size_t(k)], 1e-10);
    EXPECT_LT(relative_difference(metric_from_weights({b, fit.weights}).theta(), theta.theta()), 1e-10);
  }
}
