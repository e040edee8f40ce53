#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qdf/gpe.hpp"
#include "qdf/lattice.hpp"
#include "qdf/nbody.hpp"
#include "qdf/random.hpp"
#include "qdf/sweep.hpp"
#include "qdf/symmetric.hpp"

using namespace qdf;

namespace {

LatticeModel harmonic_model(int l = 12, double h_x = 0.5) {
  LatticeModel m;
  m.sites_per_axis = l;
  m.h_x = h_x;
  m.potential = harmonic_potential(1.0);
  m.interaction = gaussian_interaction(0.5, 1.0);
  m.beta = 0.2;
  m.n_particles = 4;
  return m;
}

Eigen::VectorXd spectrum(const Operator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

TEST_CASE("free periodic lattice reproduces the discrete Fourier spectrum") {
  LatticeModel m;
  m.sites_per_axis = 10;
  m.h_x = 0.7;
  m.boundary = Boundary::Periodic;
  const auto eigs = spectrum(build_one_body(m));
  std::vector<double> expected;
  for (int k = 0; k < 10; ++k)
    expected.push_back((2.0 - 2.0 * std::cos(2.0 * M_PI * k / 10)) / (0.7 * 0.7));
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 10; ++i)
    CHECK(eigs(i) == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("constant potential shift moves every eigenvalue exactly") {
  LatticeModel m = harmonic_model(10);
  const auto base = spectrum(build_one_body(m));
  LatticeModel shifted = m;
  shifted.potential = [](double x, double y) { return x * x + y * y + 2.5; };
  const auto moved = spectrum(build_one_body(shifted));
  for (int i = 0; i < 10; ++i)
    CHECK(moved(i) - base(i) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("harmonic lattice ground energy converges at second order") {
  auto ground = [](int l) {
    LatticeModel m;
    m.sites_per_axis = l;
    m.h_x = 16.0 / (l - 1);  // box spanning [-8, 8]
    m.potential = harmonic_potential(1.0);
    return spectrum(build_one_body(m))(0);
  };
  const double coarse = ground(64);
  const double fine = ground(128);
  CHECK(std::abs(fine - 1.0) < 1e-3);  // oscillator ground state energy
  CHECK(std::abs(coarse - 1.0) < 5e-3);
  // central differences: halving h shrinks the error about fourfold
  const double order = std::log2(std::abs(coarse - 1.0) / std::abs(fine - 1.0));
  CHECK(order == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("2D harmonic lattice is hermitian with doubled ground energy") {
  LatticeModel m;
  m.space_dim = 2;
  m.sites_per_axis = 16;
  m.h_x = 0.6;
  m.potential = harmonic_potential(1.0);
  const Operator h = build_one_body(m);
  CHECK(h.is_hermitian());
  // E_0 = d in d dimensions, up to the O(h^2) discretization error
  CHECK(std::abs(spectrum(h)(0) - 2.0) < 0.05);
}

TEST_CASE("peierls phases keep h hermitian and shift the free spectrum") {
  LatticeModel m;
  m.sites_per_axis = 8;
  m.h_x = 1.0;
  m.boundary = Boundary::Periodic;
  m.link_field.assign(8, 0.3);
  const Operator h = build_one_body(m);
  CHECK(h.is_hermitian());
  // constant A on a ring: eigenvalues 2(1 - cos(2 pi k/L + A h_x))/h^2
  const auto eigs = spectrum(h);
  std::vector<double> expected;
  for (int k = 0; k < 8; ++k)
    expected.push_back(2.0 - 2.0 * std::cos(2.0 * M_PI * k / 8 + 0.3));
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 8; ++i)
    CHECK(eigs(i) == doctest::Approx(expected[i]).epsilon(1e-9));
}

TEST_CASE("spectral projector edge cases and counting") {
  const Operator h = build_one_body(harmonic_model(16));
  const auto eigs = spectrum(h);
  CHECK(spectral_projector(h, eigs(0) - 1.0).n_lambda == 0);
  const auto full = spectral_projector(h, eigs(15) + 1.0);
  CHECK(full.n_lambda == 16);
  CHECK((full.p.matrix() - Matrix::Identity(16, 16)).norm() < 1e-9);

  const auto mid = spectral_projector(h, 4.5);
  int manual = 0;
  for (int i = 0; i < 16; ++i)
    if (eigs(i) <= 4.5) ++manual;
  CHECK(mid.n_lambda == manual);
  const Matrix p = mid.p.matrix();
  CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((p - Matrix(p.adjoint())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("scaled interaction basics") {
  LatticeModel m = harmonic_model(16);
  m.beta = 0.0;
  const auto flat = scaled_interaction(m);
  // beta = 0 leaves w untouched
  CHECK(flat.w(3, 7) ==
        doctest::Approx(m.interaction(m.displacement(3, 7) , 0.0)).epsilon(1e-12));

  m.beta = 0.2;
  m.n_particles = 4;
  const auto scaled = scaled_interaction(m);
  const double factor = std::pow(4.0, 0.2);
  CHECK(scaled.w(5, 5) == doctest::Approx(factor * m.interaction(0, 0)).epsilon(1e-12));

  // quadrature integral close to the Gaussian mass amplitude*sqrt(2 pi)*width
  const double exact = 0.5 * std::sqrt(2.0 * M_PI) * 1.0;
  CHECK(std::abs(scaled.a - exact) / exact < 0.05);
  CHECK_FALSE(scaled.under_resolved);

  // a very narrow interaction against a coarse grid is flagged
  LatticeModel narrow = m;
  narrow.interaction = gaussian_interaction(1.0, 1e-3);
  CHECK(scaled_interaction(narrow).under_resolved);
}

TEST_CASE("free two-boson spectrum combines one-body levels") {
  LatticeModel m;
  m.sites_per_axis = 2;
  m.h_x = 1.0;
  m.potential = harmonic_potential(1.0);
  m.n_particles = 2;
  const Operator h = build_one_body(m);
  const auto eigs = spectrum(h);
  const auto hn = build_n_body(m, h, scaled_interaction(m));
  Eigen::SelfAdjointEigenSolver<Matrix> es{Matrix(hn.h)};
  std::vector<double> expected{2 * eigs(0), eigs(0) + eigs(1), 2 * eigs(1)};
  std::sort(expected.begin(), expected.end());
  REQUIRE(es.eigenvalues().size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(es.eigenvalues()(i) == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("N = 2 matches the first-quantized symmetric-subspace matrix") {
  LatticeModel m = harmonic_model(5);
  m.n_particles = 2;
  const Operator h = build_one_body(m);
  const auto wmat = scaled_interaction(m);
  const auto hn = build_n_body(m, h, wmat);

  const Matrix h2 = two_body_hamiltonian(h, wmat);
  const auto sub = symmetric_subspace(5, 2);
  const Matrix projected = sub.isometry.adjoint() * h2 * sub.isometry;
  CHECK((Matrix(hn.h) - projected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("constant interaction contributes an exact energy shift") {
  LatticeModel m = harmonic_model(4);
  m.n_particles = 3;
  m.interaction = nullptr;
  const Operator h = build_one_body(m);
  const auto free_op = build_n_body(m, h, scaled_interaction(m));

  LatticeModel flat = m;
  const double c = 0.37;
  flat.interaction = [c](double, double) { return c; };
  const auto wmat = scaled_interaction(flat);
  const auto shifted = build_n_body(flat, h, wmat);
  // N(N-1)/2 pairs, coupling c N^{d beta} / (N-1): total shift c' N / 2
  const double shift = wmat.w(0, 0) * flat.n_particles / 2.0;
  const Matrix diff = Matrix(shifted.h) - Matrix(free_op.h);
  CHECK((diff - shift * Matrix::Identity(diff.rows(), diff.cols()))
            .cwiseAbs()
            .maxCoeff() < 1e-10);
}

TEST_CASE("non-interacting ground state is an exact condensate") {
  LatticeModel m = harmonic_model(8);
  m.interaction = nullptr;
  m.n_particles = 4;
  const Operator h = build_one_body(m);
  const auto gs = ground_state(build_n_body(m, h, scaled_interaction(m)));
  const auto eigs = spectrum(h);
  CHECK(std::abs(gs.e_n - 4 * eigs(0)) < 1e-9);
  CHECK(std::abs(gs.condensate_fraction - 1.0) < 1e-9);

  // rdm1 is the one-body ground projector
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  const Vector phi = es.eigenvectors().col(0);
  CHECK((gs.rdm1.matrix() - Matrix(phi * phi.adjoint())).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("lanczos path agrees with a dense solve") {
  LatticeModel m = harmonic_model(10, 0.6);
  m.n_particles = 4;  // dimension 715 forces the iterative path
  const Operator h = build_one_body(m);
  const auto hn = build_n_body(m, h, scaled_interaction(m));
  REQUIRE(hn.basis.size() == 715);
  const auto gs = ground_state(hn, 1e-10);
  Eigen::SelfAdjointEigenSolver<Matrix> dense{Matrix(hn.h)};
  CHECK(std::abs(gs.e_n - dense.eigenvalues()(0)) < 1e-9);
  CHECK(gs.residual < 1e-8);
}

TEST_CASE("ground-state report satisfies the reduced-matrix contracts") {
  LatticeModel m = harmonic_model(8);
  m.n_particles = 3;
  const Operator h = build_one_body(m);
  const auto wmat = scaled_interaction(m);
  const auto gs = ground_state(build_n_body(m, h, wmat));

  CHECK(std::abs(gs.rdm1.op().trace().real() - 1.0) < 1e-10);
  CHECK(std::abs(gs.rdm2.op().trace().real() - 1.0) < 1e-10);
  CHECK((partial_trace(gs.rdm2.op(), {1}).matrix() - gs.rdm1.matrix())
            .cwiseAbs()
            .maxCoeff() < 1e-9);
  gs.rdm1.validate();
  gs.rdm2.validate();

  // energy identity: <H>/N = (1/2) tr(H_2 rdm2)
  const double via_rdm2 =
      0.5 * (two_body_hamiltonian(h, wmat) * gs.rdm2.matrix()).trace().real();
  CHECK(std::abs(gs.per_particle - via_rdm2) < 1e-8);

  // repulsive interaction cannot push the energy below the free minimum
  CHECK(gs.per_particle >= spectrum(h)(0) - 1e-9);
}

TEST_CASE("nls reduces to the linear problem without interaction") {
  LatticeModel m = harmonic_model(16);
  const Operator h = build_one_body(m);
  const auto res = nls_minimize(m, h, 0.0);
  CHECK(std::abs(res.energy - spectrum(h)(0)) < 1e-9);
}

TEST_CASE("repulsive nls energy sits above the linear minimum") {
  LatticeModel m = harmonic_model(16);
  const Operator h = build_one_body(m);
  const auto res = nls_minimize(m, h, 1.0);
  CHECK(res.energy >= spectrum(h)(0));
  CHECK(std::abs(res.u.norm() - 1.0) < 1e-12);
}

TEST_CASE("nls minimizer agrees with a self-consistent iteration oracle") {
  LatticeModel m = harmonic_model(48, 16.0 / 47.0);
  const Operator h = build_one_body(m);
  const double a_eff = 1.0;
  const auto res = nls_minimize(m, h, a_eff);

  // independent oracle: damped self-consistent diagonalization of
  // h + (a/h_x) diag(|u|^2)
  Eigen::SelfAdjointEigenSolver<Matrix> es0(h.matrix());
  Vector u = es0.eigenvectors().col(0);
  for (int it = 0; it < 400; ++it) {
    Matrix eff = h.matrix();
    for (int i = 0; i < h.dim(); ++i)
      eff(i, i) += a_eff / m.h_x * std::norm(u(i));
    Eigen::SelfAdjointEigenSolver<Matrix> es(eff);
    Vector v = es.eigenvectors().col(0);
    if (u.dot(v).real() < 0) v = -v;  // eigenvector sign is arbitrary
    u = (0.7 * u + 0.3 * v).normalized();
  }
  double oracle = (u.adjoint() * h.matrix() * u)(0, 0).real();
  for (int i = 0; i < h.dim(); ++i)
    oracle += 0.5 * a_eff / m.h_x * std::norm(u(i)) * std::norm(u(i));
  CHECK(std::abs(res.energy - oracle) < 1e-6);
}

TEST_CASE("nls gradient matches central finite differences") {
  LatticeModel m = harmonic_model(10);
  const Operator h = build_one_body(m);
  const Eigen::MatrixXd kernel =
      (1.3 / m.h_x) * Eigen::MatrixXd::Identity(10, 10);
  RandomStream rng(31);
  Vector u = random_gaussian_vector(10, rng).normalized();
  const Vector g = pair_functional_gradient(h, kernel, u);
  const double eps = 1e-6;
  for (int t = 0; t < 20; ++t) {
    const int i = t % 10;
    const bool real_part = t < 10;
    Vector up = u, um = u;
    const Complex delta = real_part ? Complex(eps, 0) : Complex(0, eps);
    up(i) += delta;
    um(i) -= delta;
    const double fd = (pair_functional_value(h, kernel, up) -
                       pair_functional_value(h, kernel, um)) /
                      (2.0 * eps);
    // gradient convention: dE = 2 Re <g, du>
    const double analytic = real_part ? 2.0 * g(i).real() : 2.0 * g(i).imag();
    CHECK(std::abs(fd - analytic) <= 1e-6 * std::max(1.0, std::abs(analytic)));
  }
}

TEST_CASE("hartree energy of a pure state matches the nls functional") {
  LatticeModel m = harmonic_model(12);
  const Operator h = build_one_body(m);
  const auto wmat = scaled_interaction(m);
  RandomStream rng(37);
  const Vector u = random_gaussian_vector(12, rng).normalized();
  const auto out = hartree_energy(DensityMatrix({12}, Matrix(u * u.adjoint())), m, h, wmat);

  const Eigen::MatrixXd nls_kernel =
      (wmat.a / m.h_x) * Eigen::MatrixXd::Identity(12, 12);
  CHECK(out.nls_mixed ==
        doctest::Approx(pair_functional_value(h, nls_kernel, u)).epsilon(1e-12));
  CHECK(out.hartree ==
        doctest::Approx(pair_functional_value(h, wmat.w, u)).epsilon(1e-12));
  CHECK(out.coercivity_c >= 0.0);
  CHECK(out.kinetic_trace <= out.coercivity_c * (out.hartree + out.coercivity_c) + 1e-9);
}

TEST_CASE("single-site interaction closes the smearing gap at beta = 0") {
  LatticeModel m = harmonic_model(10);
  m.beta = 0.0;
  m.interaction = top_hat_interaction(0.8, m.h_x / 4.0);  // only the origin survives
  const Operator h = build_one_body(m);
  const auto wmat = scaled_interaction(m);
  RandomStream rng(41);
  const DensityMatrix gamma = random_mixed_hs({10}, rng);
  const auto out = hartree_energy(gamma, m, h, wmat);
  CHECK(std::abs(out.hartree - out.nls_mixed) < 1e-10);
}

TEST_CASE("fourier decomposition is exact for a delta interaction") {
  LatticeModel m;
  m.sites_per_axis = 8;
  m.h_x = 0.5;
  m.boundary = Boundary::Periodic;
  m.n_particles = 2;
  m.interaction = top_hat_interaction(1.0, m.h_x / 4.0);
  const auto wmat = scaled_interaction(m);
  const auto terms = fourier_pair_decomposition(wmat, m);
  const auto rebuilt = fourier_reconstruction(terms);
  for (int p = 0; p < 8; ++p)
    for (int q = 0; q < 8; ++q)
      CHECK(std::abs(rebuilt(p * 8 + q, p * 8 + q) - wmat.w(p, q)) < 1e-10);
  // flat spectrum for a delta
  for (const auto& t : terms) CHECK(t.weight == doctest::Approx(terms[0].weight));
}

TEST_CASE("cos split recombines exactly and fails on odd interactions") {
  LatticeModel m;
  m.sites_per_axis = 16;
  m.h_x = 0.4;
  m.boundary = Boundary::Periodic;
  m.n_particles = 4;
  m.beta = 0.2;
  m.interaction = gaussian_interaction(0.5, 1.0);
  const auto terms = fourier_pair_decomposition(scaled_interaction(m), m);
  for (const auto& t : terms)
    for (int i = 0; i < 16; ++i) {
      const double c = t.c_plus(i, i) - t.c_minus(i, i);
      CHECK(std::abs(c - std::cos(t.momentum * i * m.h_x)) < 1e-12);
      CHECK(t.c_plus(i, i) >= 0.0);
      CHECK(t.c_minus(i, i) >= 0.0);
    }

  LatticeModel odd = m;
  odd.interaction = [](double dx, double) { return dx; };
  CHECK_THROWS(fourier_pair_decomposition(scaled_interaction(odd), odd));
}

TEST_CASE("localized gap reduces to the free split without interaction") {
  LatticeModel m = harmonic_model(8);
  m.interaction = nullptr;
  const auto rep = localized_h2_gap(m, 0.5, 6.0);
  CHECK(rep.min_eigenvalue >= -1e-9);
}

TEST_CASE("full projector leaves only the epsilon term") {
  LatticeModel m = harmonic_model(8);
  const Operator h = build_one_body(m);
  const double top = spectrum(h)(7) + 1.0;
  const auto rep = localized_h2_gap(m, 0.5, top);
  CHECK(rep.min_eigenvalue >= -1e-9);  // difference = eps |W| >= 0
}

TEST_CASE("h2 gap scan certifies a small constant on the preset model") {
  LatticeModel m = harmonic_model(12);
  m.n_particles = 4;
  const auto rep = localized_h2_gap(m, 0.5, 10.0);
  REQUIRE(rep.smallest_passing_c > 0);
  CHECK(rep.smallest_passing_c <= 8);
}

TEST_CASE("convergence sweep without interaction is exact") {
  LatticeModel m = harmonic_model(8);
  m.interaction = nullptr;
  const Operator h = build_one_body(m);
  const double ground = spectrum(h)(0);
  const auto rows = convergence_sweep(m, 2, 4);
  for (const auto& r : rows) {
    CHECK(std::abs(r.e_per_particle - ground) < 1e-9);
    CHECK(std::abs(r.e_nls - ground) < 1e-9);
    CHECK(std::abs(r.condensate_fraction - 1.0) < 1e-9);
    CHECK(r.upper_bound_ok);
    CHECK(r.energy_identity_ok);
    CHECK(r.rdm_consistent);
  }
}
