#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdf/definetti.hpp"
#include "qdf/random.hpp"

using namespace qdf;

namespace {

SymmetricState random_symmetric(int d, int n, std::uint64_t seed) {
  RandomStream rng(seed);
  return SymmetricState{random_symmetric_pure(d, n, rng).projector()};
}

SymmetricState ghz(int n) {
  const int dim = 1 << n;
  Vector v = Vector::Zero(dim);
  v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
  return SymmetricState{DensityMatrix(std::vector<int>(n, 2),
                                      Matrix(v * v.adjoint()))};
}

std::vector<Measurement> random_parts(int d, int count, RandomStream& rng) {
  MeasurementFamily family(FamilyKind::ProjectiveUnitary, d);
  std::vector<Measurement> parts;
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd params(family.param_count());
    for (int j = 0; j < params.size(); ++j) params(j) = rng.gaussian();
    parts.push_back(family.realize(params));
  }
  return parts;
}

OptimizerBudget small_budget() {
  OptimizerBudget b;
  b.restarts = 5;
  b.sweeps = 2;
  b.max_evals = 80;
  return b;
}

}  // namespace

TEST_CASE("binomial oracle") {
  CHECK(binomial(6, 2) == doctest::Approx(15.0));
  CHECK(binomial(12, 6) == doctest::Approx(924.0));
  CHECK(binomial(4, 0) == doctest::Approx(1.0));
  CHECK(binomial(3, 5) == doctest::Approx(0.0));
}

TEST_CASE("measurement decomposition averages back to the reduced state") {
  RandomStream rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 3;
    const int k = 1 + trial % (n - 1);
    const SymmetricState sym = random_symmetric(2, n, 100 + trial);
    auto parts = random_parts(2, n - k, rng);
    const auto ens = decompose_by_measurement(sym, parts, k);

    Matrix avg = Matrix::Zero(1 << k, 1 << k);
    double wsum = 0.0;
    for (size_t mu = 0; mu < ens.weights.size(); ++mu) {
      avg += ens.weights[mu] * ens.k_body[mu].matrix();
      wsum += ens.weights[mu];
    }
    CHECK(std::abs(wsum - 1.0) < 1e-10);
    CHECK((avg - reduced(sym, k).matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("one-body members are the partial traces of the k-body members") {
  RandomStream rng(2);
  const SymmetricState sym = random_symmetric(2, 4, 7);
  const auto ens = decompose_by_measurement(sym, random_parts(2, 2, rng), 2);
  for (size_t mu = 0; mu < ens.weights.size(); ++mu) {
    const Operator traced = partial_trace(ens.k_body[mu], {1});
    CHECK((traced.matrix() - ens.one_body[mu].matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("product states decompose with zero de Finetti error") {
  RandomStream rng(3);
  const int n = 4;
  const DensityMatrix one = random_pure_haar({2}, rng);
  Matrix m = one.matrix();
  for (int i = 1; i < n; ++i) m = kron(m, one.matrix());
  const SymmetricState sym{DensityMatrix(std::vector<int>(n, 2), std::move(m))};
  const auto ens = decompose_by_measurement(sym, random_parts(2, 2, rng), 2);
  const Operator tilde = build_tilde(ens, 2);
  CHECK((tilde.matrix() - reduced(sym, 2).matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("GHZ under computational measurements yields the textbook ensemble") {
  const SymmetricState sym = ghz(4);
  std::vector<Measurement> parts(2, Measurement::computational(2));
  const auto ens = decompose_by_measurement(sym, parts, 2);
  REQUIRE(ens.weights.size() == 2);
  CHECK(ens.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ens.weights[1] == doctest::Approx(0.5).epsilon(1e-12));
  for (const auto& one : ens.one_body) {
    // each member is a computational basis projector
    CHECK(std::abs(one.matrix()(0, 1)) < 1e-12);
    const double top = one.matrix()(0, 0).real();
    CHECK((std::abs(top - 1.0) < 1e-10 || std::abs(top) < 1e-10));
  }
}

TEST_CASE("greedy chain terms are nonnegative information quantities") {
  const SymmetricState sym = ghz(4);
  const Measurement comp = Measurement::computational(2);
  const double last = greedy_chain_term(sym, 2, 4, comp, {});
  const double mid = greedy_chain_term(sym, 2, 3, comp, {comp});
  CHECK(last >= -1e-9);
  CHECK(mid >= -1e-9);
  // measuring the GHZ in its classical basis: slot 4 carries all of the
  // correlation, slot 3 adds nothing once slot 4 is known
  CHECK(last == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(mid == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("trace-norm bound holds on random symmetric states") {
  for (int trial = 0; trial < 3; ++trial) {
    const SymmetricState sym = random_symmetric(2, 4, 200 + trial);
    const auto res = check_trace_norm_bound(sym, 2, small_budget(), 11 + trial);
    CHECK(res.pass);
    CHECK(res.lhs_lower_bound >= -1e-12);
    CHECK(res.rhs_bound ==
          doctest::Approx(std::sqrt(2.0 * std::log(2.0) / 3.0)).epsilon(1e-12));
  }
}

TEST_CASE("information bound and Pinsker bridge hold on random states") {
  for (int trial = 0; trial < 3; ++trial) {
    const SymmetricState sym = random_symmetric(2, 4, 300 + trial);
    const auto res = check_info_bound(sym, 2, small_budget(), 17 + trial);
    CHECK(res.pass);
    CHECK(res.bridge_ok);
    CHECK(res.rhs_bound == doctest::Approx(std::log(2.0) / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("k = 1 bounds are trivial and exact") {
  const SymmetricState sym = random_symmetric(2, 4, 400);
  const auto tn = check_trace_norm_bound(sym, 1, small_budget(), 1);
  CHECK(tn.rhs_bound == doctest::Approx(0.0));
  CHECK(tn.lhs_lower_bound < 1e-10);
  CHECK(tn.pass);
}

TEST_CASE("fock localization weights form a distribution") {
  RandomStream rng(5);
  const PureState psi = random_symmetric_pure(2, 4, rng);
  Matrix proj = Matrix::Zero(2, 2);
  proj(0, 0) = 1.0;
  const auto sectors = fock_localization(psi, Operator({2}, proj));
  CHECK(sectors.rank_p == 1);
  double total = 0.0;
  for (double c : sectors.weights) {
    CHECK(c >= -1e-12);
    total += c;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  for (size_t l = 1; l < sectors.sector_states.size(); ++l)
    if (sectors.weights[l] > 1e-12)
      CHECK(std::abs(sectors.sector_states[l].trace().real() - 1.0) < 1e-10);
}

TEST_CASE("identity projector concentrates all weight in the top sector") {
  RandomStream rng(6);
  const PureState psi = random_symmetric_pure(2, 3, rng);
  const auto sectors = fock_localization(psi, Operator({2}, Matrix::Identity(2, 2)));
  CHECK(sectors.weights[3] == doctest::Approx(1.0).epsilon(1e-12));
  for (int l = 0; l < 3; ++l) CHECK(std::abs(sectors.weights[l]) < 1e-12);
}

TEST_CASE("localization reconstruction identity") {
  RandomStream rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 3 + trial % 3;
    const PureState psi = random_symmetric_pure(2, n, rng);
    // random rank-1 projector |u><u|
    Vector u(2);
    u(0) = Complex(rng.gaussian(), rng.gaussian());
    u(1) = Complex(rng.gaussian(), rng.gaussian());
    u.normalize();
    const Operator p({2}, Matrix(u * u.adjoint()));
    const auto sectors = fock_localization(psi, p);
    CHECK(localization_residual(psi, p, sectors, 1) < 1e-10);
    CHECK(localization_residual(psi, p, sectors, 2) < 1e-10);
  }
}

TEST_CASE("localization rejects non-projectors") {
  RandomStream rng(8);
  const PureState psi = random_symmetric_pure(2, 3, rng);
  CHECK_THROWS(fock_localization(psi, Operator({2}, 0.5 * Matrix::Identity(2, 2))));
}

TEST_CASE("combinatorial sector weights obey the sqrt bound") {
  for (int n = 2; n <= 8; ++n)
    for (int l = 2; l <= n; ++l)
      CHECK(binomial(l, 2) / binomial(n, 2) / std::sqrt(double(l)) <=
            1.0 / std::sqrt(double(n)) + 1e-15);
}

TEST_CASE("projected de Finetti is exact for rank-one projectors") {
  RandomStream rng(9);
  const PureState psi = random_symmetric_pure(2, 4, rng);
  Matrix proj = Matrix::Zero(2, 2);
  proj(1, 1) = 1.0;
  const auto res = projected_definetti(psi, Operator({2}, proj), small_budget(), 5);
  CHECK(res.rhs_bound == doctest::Approx(0.0));
  CHECK(res.lhs_lower_bound < 1e-9);
}

TEST_CASE("projected de Finetti reports a finite fitted constant") {
  RandomStream rng(10);
  const PureState psi = random_symmetric_pure(2, 5, rng);
  const auto res =
      projected_definetti(psi, Operator({2}, Matrix::Identity(2, 2)), small_budget(), 6);
  CHECK(res.rhs_bound == doctest::Approx(std::sqrt(std::log(2.0) / 5.0)).epsilon(1e-12));
  CHECK(std::isfinite(res.fitted_c));
  CHECK(res.lhs_lower_bound >= -1e-12);
}
