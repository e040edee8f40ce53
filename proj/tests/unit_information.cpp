#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdf/information.hpp"
#include "qdf/optimize.hpp"
#include "qdf/random.hpp"

using namespace qdf;

namespace {

Operator diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return Operator({2}, m);
}

}  // namespace

TEST_CASE("entropy oracles") {
  CHECK(von_neumann_entropy(diag2(0.75, 0.25)) ==
        doctest::Approx(0.5623351446188083).epsilon(1e-14));
  CHECK(von_neumann_entropy(diag2(1.0, 0.0)) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(diag2(0.5, 0.5)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("entropy is basis independent") {
  RandomStream rng(1);
  const DensityMatrix g = random_mixed_hs({2, 2}, rng);
  const DensityMatrix u = random_pure_haar({4}, rng);  // only for a random basis
  Eigen::SelfAdjointEigenSolver<Matrix> es(u.matrix() + Matrix::Identity(4, 4));
  const Matrix rotated = es.eigenvectors() * g.matrix() * es.eigenvectors().adjoint();
  CHECK(von_neumann_entropy(Operator({4}, rotated)) ==
        doctest::Approx(von_neumann_entropy(g)).epsilon(1e-12));
}

TEST_CASE("classical KL oracle and support sentinel") {
  const auto kl = classical_kl({0.9, 0.1}, {0.5, 0.5});
  CHECK(kl.support_ok);
  CHECK(kl.value == doctest::Approx(0.3680642071684972).epsilon(1e-14));
  CHECK(classical_kl({0.5, 0.5}, {0.5, 0.5}).value == doctest::Approx(0.0));
  const auto bad = classical_kl({1.0, 0.0}, {0.0, 1.0});
  CHECK_FALSE(bad.support_ok);
  CHECK(std::isinf(bad.value));
}

TEST_CASE("relative entropy matches the classical value on diagonal pairs") {
  const auto rel = relative_entropy(diag2(0.9, 0.1), diag2(0.5, 0.5));
  CHECK(rel.value == doctest::Approx(0.3680642071684972).epsilon(1e-12));
}

TEST_CASE("relative entropy detects support failure") {
  Vector zero = Vector::Zero(2), one = Vector::Zero(2);
  zero(0) = 1.0;
  one(1) = 1.0;
  const Operator p0({2}, zero * zero.adjoint());
  const Operator p1({2}, one * one.adjoint());
  const auto rel = relative_entropy(p0, p1);
  CHECK_FALSE(rel.support_ok);
  CHECK(std::isinf(rel.value));
}

TEST_CASE("relative entropy is nonnegative and zero iff equal") {
  RandomStream rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix g = random_mixed_hs({2, 2}, rng);
    const DensityMatrix gp = random_mixed_hs({2, 2}, rng);
    CHECK(relative_entropy(g, gp).value >= -1e-10);
    CHECK(std::abs(relative_entropy(g, g).value) < 1e-10);
  }
}

TEST_CASE("mutual information oracles") {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const Operator rho({2, 2}, bell * bell.adjoint());
  CHECK(mutual_information(rho, {0}) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));

  RandomStream rng(3);
  const DensityMatrix a = random_mixed_hs({2}, rng);
  const DensityMatrix b = random_mixed_hs({2}, rng);
  const Operator prod = tensor_product(a.op(), b.op());
  CHECK(std::abs(mutual_information(prod, {0})) < 1e-10);
}

TEST_CASE("mutual information equals relative entropy to the marginal product") {
  RandomStream rng(4);
  const DensityMatrix g = random_mixed_hs({2, 2}, rng);
  const Operator left = partial_trace(g.op(), {1});
  const Operator right = partial_trace(g.op(), {0});
  const Operator prod = tensor_product(left, right);
  CHECK(mutual_information(g.op(), {0}) ==
        doctest::Approx(relative_entropy(g.op(), prod).value).epsilon(1e-10));
}

TEST_CASE("strong subadditivity holds on random tripartite states") {
  RandomStream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix g = random_mixed_hs({2, 2, 2}, rng);
    CHECK(conditional_mutual_information(g.op(), {0}, {1}, {2}) >= -1e-9);
  }
}

TEST_CASE("conditional mutual information with empty C is plain MI") {
  RandomStream rng(6);
  const DensityMatrix g = random_mixed_hs({2, 2}, rng);
  CHECK(conditional_mutual_information(g.op(), {0}, {1}, {}) ==
        doctest::Approx(mutual_information(g.op(), {0})).epsilon(1e-12));
}

TEST_CASE("classical register turns CMI into an ensemble average") {
  RandomStream rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    // rho_ABC = sum_c p_c rho_c x |c><c| with a 3-outcome register C
    std::vector<double> p{0.5, 0.3, 0.2};
    Matrix joint = Matrix::Zero(12, 12);
    double expected = 0.0;
    std::vector<DensityMatrix> parts;
    for (int c = 0; c < 3; ++c) parts.push_back(random_mixed_hs({2, 2}, rng));
    for (int c = 0; c < 3; ++c) {
      Matrix reg = Matrix::Zero(3, 3);
      reg(c, c) = 1.0;
      joint += p[c] * kron(parts[c].matrix(), reg);
      expected += p[c] * mutual_information(parts[c].op(), {0});
    }
    const Operator rho({2, 2, 3}, joint);
    CHECK(std::abs(conditional_mutual_information(rho, {0}, {1}, {2}) - expected) <
          1e-10);
  }
}

TEST_CASE("chain rule residual vanishes") {
  RandomStream rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix g = random_mixed_hs({2, 2, 2, 2}, rng);
    CHECK(chain_rule_check(g.op(), 2) < 1e-9);
    CHECK(chain_rule_check(g.op(), 3) < 1e-9);
  }
}

TEST_CASE("multipartite mutual information telescopes over bipartite terms") {
  RandomStream rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix g = random_mixed_hs({2, 2, 2, 2}, rng);
    double total = 0.0;
    for (int j = 2; j <= 4; ++j) {
      std::vector<int> traced;
      for (int i = j; i < 4; ++i) traced.push_back(i);
      const Operator red = traced.empty() ? g.op() : partial_trace(g.op(), traced);
      std::vector<int> left;
      for (int i = 0; i < j - 1; ++i) left.push_back(i);
      total += mutual_information(red, left);
    }
    CHECK(std::abs(multipartite_mutual_information(g.op()) - total) < 1e-10);
  }
}

TEST_CASE("pinsker gap oracle and positivity") {
  const double gap = pinsker_gap(DensityMatrix(diag2(1.0, 0.0)),
                                 DensityMatrix(diag2(0.5, 0.5)));
  CHECK(gap == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-12));

  RandomStream rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix g = random_mixed_hs({2, 2}, rng);
    const DensityMatrix gp = random_mixed_hs({2, 2}, rng);
    CHECK(pinsker_gap(g, gp) >= -1e-9);
  }
}

TEST_CASE("measured relative entropy obeys data processing") {
  RandomStream rng(11);
  MeasurementFamily family(FamilyKind::ProjectiveUnitary, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const DensityMatrix g = random_mixed_hs({2, 2}, rng);
    const DensityMatrix gp = random_mixed_hs({2, 2}, rng);
    Eigen::VectorXd params(family.param_count());
    for (int i = 0; i < params.size(); ++i) params(i) = rng.gaussian();
    const Measurement lambda = family.realize(params);
    const double before = relative_entropy(g, gp).value;
    const double after = classical_kl(lambda.outcome_distribution(g.matrix()),
                                      lambda.outcome_distribution(gp.matrix()))
                             .value;
    CHECK(after <= before + 1e-9);
  }
}
