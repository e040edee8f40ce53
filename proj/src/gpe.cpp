#include "qdf/gpe.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace qdf {

namespace {

Eigen::VectorXd densities(const Vector& u) { return u.cwiseAbs2(); }

}  // namespace

double pair_functional_value(const Operator& h, const Eigen::MatrixXd& kernel,
                             const Vector& u) {
  const Eigen::VectorXd n = densities(u);
  const double quadratic = (u.adjoint() * h.matrix() * u)(0, 0).real();
  return quadratic + 0.5 * n.dot(kernel * n);
}

Vector pair_functional_gradient(const Operator& h, const Eigen::MatrixXd& kernel,
                                const Vector& u) {
  const Eigen::VectorXd field = kernel * densities(u);
  return h.matrix() * u + field.cast<Complex>().cwiseProduct(u);
}

MinimizeResult pair_functional_minimize(const Operator& h, const Eigen::MatrixXd& kernel,
                                        double tol, int max_iters) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  MinimizeResult res;
  res.u = es.eigenvectors().col(0);
  double energy = pair_functional_value(h, kernel, res.u);

  // explicit gradient flow is stable only below ~2/lambda_max(h)
  const double max_step = 1.0 / std::max(1.0, std::abs(es.eigenvalues()(h.dim() - 1)));
  double step = 0.1 * max_step;
  for (int it = 0; it < max_iters; ++it) {
    const Vector g = pair_functional_gradient(h, kernel, res.u);
    const Complex overlap = res.u.dot(g);
    const Vector tangent = g - overlap * res.u;  // projected gradient
    const double gnorm = tangent.norm();

    // near the minimum the per-step decrease ~ step * gnorm^2 drops below one
    // ulp of the energy, so the gradient stalls around sqrt(eps/step); ask only
    // for the gradient level that gives energy accuracy ~ tol
    const double gtol = std::sqrt(tol) * std::max(1.0, std::abs(energy));

    Vector trial = res.u - step * tangent;
    trial.normalize();
    const double trial_energy = pair_functional_value(h, kernel, trial);
    if (trial_energy <= energy) {
      const double decrease = energy - trial_energy;
      res.u = trial;
      energy = trial_energy;
      step = std::min(step * 1.1, max_step);
      if (decrease < tol && gnorm < gtol) {
        res.energy = energy;
        res.iterations = it + 1;
        res.converged = true;
        return res;
      }
    } else {
      step *= 0.5;
      if (step < 1e-18 && gnorm < gtol) {
        res.energy = energy;
        res.iterations = it + 1;
        res.converged = true;
        return res;
      }
    }
  }
  res.energy = energy;
  res.iterations = max_iters;
  res.converged = false;
  return res;
}

MinimizeResult nls_minimize(const LatticeModel& model, const Operator& h, double a_eff,
                            double tol) {
  double quad = 1.0;
  for (int i = 0; i < model.space_dim; ++i) quad *= model.h_x;
  const Eigen::MatrixXd kernel =
      (a_eff / quad) * Eigen::MatrixXd::Identity(h.dim(), h.dim());
  auto res = pair_functional_minimize(h, kernel, tol);
  if (!res.converged) throw std::runtime_error("nls minimization did not converge");
  return res;
}

MinimizeResult hartree_minimize(const Operator& h, const ScaledInteraction& wmat,
                                double tol) {
  auto res = pair_functional_minimize(h, wmat.w, tol);
  if (!res.converged) throw std::runtime_error("hartree minimization did not converge");
  return res;
}

OneBodyStateEnergy hartree_energy(const DensityMatrix& gamma, const LatticeModel& model,
                                  const Operator& h, const ScaledInteraction& wmat) {
  if (gamma.dim() != h.dim()) throw std::invalid_argument("gamma/h dimension mismatch");
  OneBodyStateEnergy out;
  out.gamma = gamma;
  out.kinetic_trace = (h.matrix() * gamma.matrix()).trace().real();

  Eigen::VectorXd diag(gamma.dim());
  for (int i = 0; i < gamma.dim(); ++i) diag(i) = gamma.matrix()(i, i).real();

  out.hartree = out.kinetic_trace + 0.5 * diag.dot(wmat.w * diag);
  double quad = 1.0;
  for (int i = 0; i < model.space_dim; ++i) quad *= model.h_x;
  out.nls_mixed = out.kinetic_trace + 0.5 * (wmat.a / quad) * diag.squaredNorm();

  // smallest C >= 0 with tr(h gamma) <= C (E^H + C)
  const double kin = std::max(out.kinetic_trace, 0.0);
  out.coercivity_c =
      kin == 0.0 ? 0.0
                 : 0.5 * (-out.hartree + std::sqrt(out.hartree * out.hartree + 4.0 * kin));
  return out;
}

}  // namespace qdf
