#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "qdf/lattice.hpp"
#include "qdf/operator.hpp"

namespace qdf {

/// Bosonic occupation basis: every way to place n particles into the given
/// number of modes, first mode descending.
std::vector<std::vector<int>> bosonic_basis(int modes, int n, long cap = 200000);
long bosonic_dimension(int modes, int n);

/// Second-quantized N-body Hamiltonian on the occupation basis:
///   H = sum_{pq} h_{pq} a+_p a_q
///     + 1/(2(N-1)) sum_{pq} W(p,q) (n_p n_q - delta_{pq} n_p)
/// with W the site-diagonal pair potential w_{N,beta}(x_p - x_q).
struct NBodyOperator {
  Eigen::SparseMatrix<Complex> h;
  std::vector<std::vector<int>> basis;
  int n_modes = 0;
  int n_particles = 0;
};

NBodyOperator build_n_body(const LatticeModel& model, const Operator& h,
                           const ScaledInteraction& wmat, long cap = 200000);

struct GroundStateReport {
  double e_n = 0.0;
  double per_particle = 0.0;
  DensityMatrix rdm1;
  DensityMatrix rdm2;
  double condensate_fraction = 0.0;
  Vector amplitudes;  // ground vector in the occupation basis
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Lowest eigenpair by Lanczos with full reorthogonalization (dense solve
/// for small dimensions), plus the one- and two-body reduced density
/// matrices assembled from occupation amplitudes.
GroundStateReport ground_state(const NBodyOperator& op, double tol = 1e-9,
                               int max_iters = 600);

/// Dense two-body matrix H_2 = h x 1 + 1 x h + W(x - y); the per-particle
/// energy identity reads <H_N>/N = (1/2) tr(H_2 rdm2).
Matrix two_body_hamiltonian(const Operator& h, const ScaledInteraction& wmat);

}  // namespace qdf
