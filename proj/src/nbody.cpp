#include "qdf/nbody.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qdf/random.hpp"
#include "qdf/symmetric.hpp"

namespace qdf {

std::vector<std::vector<int>> bosonic_basis(int modes, int n, long cap) {
  if (n == 0) return {std::vector<int>(modes, 0)};
  return occupation_basis(modes, n, cap);
}

long bosonic_dimension(int modes, int n) {
  return n == 0 ? 1 : static_cast<long>(symmetric_dimension(modes, n));
}

namespace {

using BasisIndex = std::map<std::vector<int>, int>;

BasisIndex index_of(const std::vector<std::vector<int>>& basis) {
  BasisIndex idx;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) idx[basis[i]] = i;
  return idx;
}

}  // namespace

NBodyOperator build_n_body(const LatticeModel& model, const Operator& h,
                           const ScaledInteraction& wmat, long cap) {
  const int modes = h.dim();
  const int n = model.n_particles;
  if (n < 2) throw std::invalid_argument("need at least two particles");

  NBodyOperator op;
  op.n_modes = modes;
  op.n_particles = n;
  op.basis = bosonic_basis(modes, n, cap);
  const int dim = static_cast<int>(op.basis.size());
  const auto idx = index_of(op.basis);
  const double pair_coeff = 1.0 / (2.0 * (n - 1));

  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<size_t>(dim) * (n * 4 + 1));
  for (int col = 0; col < dim; ++col) {
    const auto& occ = op.basis[col];
    std::vector<int> occupied;
    for (int p = 0; p < modes; ++p)
      if (occ[p] > 0) occupied.push_back(p);

    Complex diag = 0.0;
    for (int p : occupied) diag += h.matrix()(p, p) * double(occ[p]);
    for (int p : occupied)
      for (int q : occupied)
        diag += pair_coeff * wmat.w(p, q) *
                (double(occ[p]) * occ[q] - (p == q ? occ[p] : 0.0));
    trips.emplace_back(col, col, diag);

    // hopping: a+_p a_q with p != q
    for (int q : occupied)
      for (int p = 0; p < modes; ++p) {
        if (p == q) continue;
        const Complex amp = h.matrix()(p, q);
        if (std::abs(amp) < 1e-15) continue;
        std::vector<int> target = occ;
        --target[q];
        ++target[p];
        const double factor = std::sqrt(double(occ[q]) * (occ[p] + 1));
        trips.emplace_back(idx.at(target), col, amp * factor);
      }
  }
  op.h.resize(dim, dim);
  op.h.setFromTriplets(trips.begin(), trips.end());
  return op;
}

namespace {

/// a_p applied mode by mode: maps the n-particle basis into the (n-1) one.
/// columns[p] holds, per source basis state, (target index, sqrt factor).
std::vector<Vector> annihilated_vectors(const NBodyOperator& op, const Vector& psi,
                                        const std::vector<std::vector<int>>& lower,
                                        const BasisIndex& lower_idx) {
  std::vector<Vector> phi(op.n_modes, Vector::Zero(lower.size()));
  for (int b = 0; b < static_cast<int>(op.basis.size()); ++b) {
    const auto& occ = op.basis[b];
    for (int p = 0; p < op.n_modes; ++p) {
      if (occ[p] == 0) continue;
      std::vector<int> target = occ;
      --target[p];
      phi[p](lower_idx.at(target)) += std::sqrt(double(occ[p])) * psi(b);
    }
  }
  return phi;
}

struct LanczosResult {
  double value = 0.0;
  Vector vector;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

LanczosResult lanczos_lowest(const Eigen::SparseMatrix<Complex>& h, double tol,
                             int max_iters) {
  const int dim = static_cast<int>(h.rows());
  LanczosResult out;

  if (dim <= 600) {
    Eigen::SelfAdjointEigenSolver<Matrix> es{Matrix(h)};
    out.value = es.eigenvalues()(0);
    out.vector = es.eigenvectors().col(0);
    out.residual = (h * out.vector - out.value * out.vector).norm();
    out.converged = true;
    return out;
  }

  const int m = std::min(dim, max_iters);
  RandomStream rng(0xC0FFEEULL);  // fixed: the solve must be deterministic
  Vector v = random_gaussian_vector(dim, rng);
  v.normalize();

  Matrix basis(dim, m);
  Eigen::VectorXd alpha(m), beta(m);
  basis.col(0) = v;
  int steps = 0;
  Vector prev = Vector::Zero(dim);
  double beta_prev = 0.0;

  for (int j = 0; j < m; ++j) {
    Vector w = h * basis.col(j);
    if (j > 0) w -= beta_prev * prev;
    alpha(j) = (basis.col(j).adjoint() * w)(0, 0).real();
    w -= alpha(j) * basis.col(j);
    // full reorthogonalization, twice for numerical safety
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= j; ++i)
        w -= (basis.col(i).adjoint() * w)(0, 0) * basis.col(i);
    beta(j) = w.norm();
    steps = j + 1;

    // Ritz estimate every few steps
    if ((j >= 4 && j % 5 == 0) || j == m - 1 || beta(j) < 1e-14) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(steps, steps);
      for (int i = 0; i < steps; ++i) {
        t(i, i) = alpha(i);
        if (i + 1 < steps) t(i, i + 1) = t(i + 1, i) = beta(i);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const double theta = es.eigenvalues()(0);
      const double res_est = std::abs(beta(j) * es.eigenvectors()(steps - 1, 0));
      if (res_est <= tol * std::max(1.0, std::abs(theta)) || beta(j) < 1e-14 ||
          j == m - 1) {
        out.value = theta;
        out.vector = Vector::Zero(dim);
        for (int i = 0; i < steps; ++i)
          out.vector += es.eigenvectors()(i, 0) * basis.col(i);
        out.vector.normalize();
        out.residual = (h * out.vector - theta * out.vector).norm();
        out.iterations = steps;
        out.converged = out.residual <= tol * std::max(1.0, std::abs(theta)) * 10.0;
        if (out.converged || beta(j) < 1e-14 || j == m - 1) return out;
      }
    }
    if (beta(j) < 1e-14) break;
    prev = basis.col(j);
    beta_prev = beta(j);
    if (j + 1 < m) basis.col(j + 1) = w / beta(j);
  }
  return out;
}

}  // namespace

GroundStateReport ground_state(const NBodyOperator& op, double tol, int max_iters) {
  const int n = op.n_particles;
  const int modes = op.n_modes;
  auto low = lanczos_lowest(op.h, tol, max_iters);
  if (!low.converged) throw std::runtime_error("ground state solve did not converge");

  GroundStateReport rep;
  rep.e_n = low.value;
  rep.per_particle = low.value / n;
  rep.amplitudes = low.vector;
  rep.residual = low.residual;
  rep.iterations = low.iterations;
  rep.converged = true;

  // rdm1(p, q) = <a+_q a_p>/N = <phi_q, phi_p>/N with phi_p = a_p psi
  const auto basis1 = bosonic_basis(modes, n - 1);
  const auto phi1 = annihilated_vectors(op, low.vector, basis1, index_of(basis1));
  Matrix g1(modes, modes);
  for (int p = 0; p < modes; ++p)
    for (int q = 0; q < modes; ++q) g1(p, q) = phi1[q].dot(phi1[p]) / double(n);
  g1 = (g1 + Matrix(g1.adjoint())) / 2.0;
  rep.rdm1 = DensityMatrix({modes}, std::move(g1));

  // rdm2((p,q),(r,s)) = <a+_r a+_s a_q a_p>/(N(N-1)): Gram matrix of the
  // doubly annihilated vectors phi_{xy} = a_y a_x psi.
  const auto basis2 = bosonic_basis(modes, n - 2);
  const auto idx2 = index_of(basis2);
  std::vector<Vector> phi2(modes * modes, Vector::Zero(basis2.size()));
  for (int b = 0; b < static_cast<int>(op.basis.size()); ++b) {
    const auto& occ = op.basis[b];
    for (int x = 0; x < modes; ++x) {
      if (occ[x] == 0) continue;
      std::vector<int> once = occ;
      --once[x];
      const double fx = std::sqrt(double(occ[x]));
      for (int y = 0; y < modes; ++y) {
        if (once[y] == 0) continue;
        std::vector<int> twice = once;
        --twice[y];
        phi2[x * modes + y](idx2.at(twice)) +=
            fx * std::sqrt(double(once[y])) * low.vector(b);
      }
    }
  }
  Matrix g2(modes * modes, modes * modes);
  const double norm2 = double(n) * (n - 1);
  for (int row = 0; row < modes * modes; ++row)
    for (int col = 0; col < modes * modes; ++col)
      g2(row, col) = phi2[col].dot(phi2[row]) / norm2;
  g2 = (g2 + Matrix(g2.adjoint())) / 2.0;
  rep.rdm2 = DensityMatrix({modes, modes}, std::move(g2));

  Eigen::SelfAdjointEigenSolver<Matrix> es(rep.rdm1.matrix(), Eigen::EigenvaluesOnly);
  rep.condensate_fraction = es.eigenvalues()(modes - 1);
  return rep;
}

Matrix two_body_hamiltonian(const Operator& h, const ScaledInteraction& wmat) {
  const int d = h.dim();
  const Matrix id = Matrix::Identity(d, d);
  Matrix h2 = kron(h.matrix(), id) + kron(id, h.matrix());
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) h2(p * d + q, p * d + q) += wmat.w(p, q);
  return h2;
}

}  // namespace qdf
