#pragma once

#include "qdf/lattice.hpp"
#include "qdf/operator.hpp"

namespace qdf {

struct MinimizeResult {
  Vector u;            // l2-normalized mode vector
  double energy = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes E[u] = <u|h|u> + (1/2) sum_{ij} K_ij |u_i|^2 |u_j|^2 over unit
/// vectors by projected imaginary-time flow with adaptive step, starting
/// from the ground state of h (so E <= lambda_min(h) + quartic(ground)).
MinimizeResult pair_functional_minimize(const Operator& h, const Eigen::MatrixXd& kernel,
                                        double tol = 1e-12, int max_iters = 200000);

/// NLS functional: kernel (a_eff / h_x^d) * identity, i.e.
/// E[u] = <u|h|u> + (a_eff/2) sum |u_i|^4 / h_x^d. The 1/h_x^d converts the
/// l2 site sum into the quadrature integral of |u|^4.
MinimizeResult nls_minimize(const LatticeModel& model, const Operator& h, double a_eff,
                            double tol = 1e-12);

/// Hartree functional: kernel w_{N,beta}(x_i - x_j), minimized over pure
/// states (the value at the minimizer upper-bounds E(N)/N via u^{xN}).
MinimizeResult hartree_minimize(const Operator& h, const ScaledInteraction& wmat,
                                double tol = 1e-12);

struct OneBodyStateEnergy {
  DensityMatrix gamma;
  double hartree = 0.0;     // tr(h gamma) + (1/2) sum W(p,q) gamma_pp gamma_qq
  double nls_mixed = 0.0;   // tr(h gamma) + (a/2) sum gamma_pp^2 / h_x^d
  double kinetic_trace = 0.0;
  double coercivity_c = 0.0;  // smallest C with tr(h gamma) <= C (E^H + C)
};

OneBodyStateEnergy hartree_energy(const DensityMatrix& gamma, const LatticeModel& model,
                                  const Operator& h, const ScaledInteraction& wmat);

/// Gradient of the pair functional at u (for the finite-difference check).
Vector pair_functional_gradient(const Operator& h, const Eigen::MatrixXd& kernel,
                                const Vector& u);
double pair_functional_value(const Operator& h, const Eigen::MatrixXd& kernel,
                             const Vector& u);

}  // namespace qdf
