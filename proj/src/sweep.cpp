#include "qdf/sweep.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace qdf {

namespace {

double trace_distance(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double gap_at(const Matrix& h2, const Matrix& habs2, const Operator& p, double epsilon,
              double lambda) {
  const int d = static_cast<int>(p.matrix().rows());
  const Matrix id = Matrix::Identity(d, d);
  const Matrix q = id - p.matrix();
  const Matrix p2 = kron(p.matrix(), p.matrix());
  const Matrix h2eps = h2 - epsilon * habs2;
  const Matrix diff = h2 - p2 * h2eps * p2 -
                      (lambda / 2.0) * (kron(q, id) + kron(id, q));
  Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

std::vector<SweepRow> convergence_sweep(LatticeModel model, int n_min, int n_max,
                                        double tol) {
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("need 2 <= n_min <= n_max");
  const Operator h = build_one_body(model);

  std::vector<SweepRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    model.n_particles = n;
    const ScaledInteraction wmat = scaled_interaction(model);
    const NBodyOperator hn = build_n_body(model, h, wmat);
    const GroundStateReport gs = ground_state(hn, tol);
    const MinimizeResult hartree = hartree_minimize(h, wmat);
    const MinimizeResult nls = nls_minimize(model, h, wmat.a);

    SweepRow row;
    row.n = n;
    row.e_per_particle = gs.per_particle;
    row.e_hartree = hartree.energy;
    row.e_nls = nls.energy;
    row.condensate_fraction = gs.condensate_fraction;
    row.interaction_integral = wmat.a;
    row.trace_dist_rdm1 =
        trace_distance(gs.rdm1.matrix(), Matrix(nls.u * nls.u.adjoint()));
    row.upper_bound_ok = gs.per_particle <= hartree.energy + 1e-9;

    const Matrix h2 = two_body_hamiltonian(h, wmat);
    const double via_rdm2 = 0.5 * (h2 * gs.rdm2.matrix()).trace().real();
    row.energy_identity_ok = std::abs(gs.per_particle - via_rdm2) <= 1e-8;
    row.rdm_consistent =
        (partial_trace(gs.rdm2.op(), {1}).matrix() - gs.rdm1.matrix())
            .cwiseAbs()
            .maxCoeff() <= 1e-9;
    rows.push_back(row);
  }
  return rows;
}

H2GapReport localized_h2_gap(const LatticeModel& model, double epsilon, double cutoff,
                             int max_scan_c) {
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("epsilon must be in (0, 1)");
  const Operator h = build_one_body(model);
  const int d = h.dim();
  if (static_cast<long>(d) * d > 40000)
    throw std::invalid_argument("two-body dense dimension cap exceeded");
  const ScaledInteraction wmat = scaled_interaction(model);

  const Matrix h2 = two_body_hamiltonian(h, wmat);
  Matrix habs2 = Matrix::Zero(d * d, d * d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      habs2(p * d + q, p * d + q) = std::abs(wmat.w(p, q));

  H2GapReport rep;
  rep.epsilon = epsilon;
  rep.cutoff = cutoff;
  rep.min_eigenvalue =
      gap_at(h2, habs2, spectral_projector(h, cutoff).p, epsilon, cutoff);

  const double base =
      std::pow(double(model.n_particles), model.space_dim * model.beta) / epsilon;
  for (int c = 1; c <= max_scan_c; c *= 2) {
    const double lambda = c * base;
    const double gap =
        gap_at(h2, habs2, spectral_projector(h, lambda).p, epsilon, lambda);
    rep.scan.push_back({c, gap});
    if (rep.smallest_passing_c < 0 && gap >= -1e-9) rep.smallest_passing_c = c;
  }
  return rep;
}

}  // namespace qdf
