#include "qdf/optimize.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdf {

Matrix hermitian_from_params(int d, const Eigen::VectorXd& params) {
  if (params.size() != d * d) throw std::invalid_argument("need d^2 parameters");
  Matrix h = Matrix::Zero(d, d);
  int p = 0;
  for (int i = 0; i < d; ++i) h(i, i) = params(p++);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double re = params(p++);
      const double im = params(p++);
      h(i, j) = Complex(re, im);
      h(j, i) = Complex(re, -im);
    }
  return h;
}

Measurement MeasurementFamily::realize(const Eigen::VectorXd& params) const {
  switch (kind_) {
    case FamilyKind::Computational:
      return Measurement::computational(dim_);
    case FamilyKind::ProjectiveUnitary: {
      const Matrix h = hermitian_from_params(dim_, params);
      Eigen::SelfAdjointEigenSolver<Matrix> es(h);
      Vector phases(dim_);
      for (int i = 0; i < dim_; ++i)
        phases(i) = std::exp(Complex(0.0, es.eigenvalues()(i)));
      const Matrix u = es.eigenvectors() * phases.asDiagonal() *
                       es.eigenvectors().adjoint();
      return Measurement::projective_from_unitary(u);
    }
    case FamilyKind::TwoOutcomeOperator: {
      const Matrix h = hermitian_from_params(dim_, params);
      Eigen::SelfAdjointEigenSolver<Matrix> es(h);
      Eigen::VectorXd squashed(dim_);
      for (int i = 0; i < dim_; ++i)
        squashed(i) = 0.5 * (std::tanh(es.eigenvalues()(i)) + 1.0);
      const Matrix a = es.eigenvectors() * squashed.asDiagonal() *
                       es.eigenvectors().adjoint();
      return two_outcome_from_operator(a);
    }
  }
  throw std::logic_error("unknown family kind");
}

double nelder_mead_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                            Eigen::VectorXd& x, double initial_step, int max_evals) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return f(x);
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& p) {
    ++evals;
    return f(p);
  };

  std::vector<Eigen::VectorXd> pts(n + 1, x);
  std::vector<double> vals(n + 1);
  for (int i = 1; i <= n; ++i) pts[i](i - 1) += initial_step;
  for (int i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  while (evals < max_evals) {
    std::vector<int> order(n + 1);
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<Eigen::VectorXd> spts(n + 1);
    std::vector<double> svals(n + 1);
    for (int i = 0; i <= n; ++i) {
      spts[i] = pts[order[i]];
      svals[i] = vals[order[i]];
    }
    pts = std::move(spts);
    vals = std::move(svals);

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[i];
    centroid /= n;

    Eigen::VectorXd refl = centroid + alpha * (centroid - pts[n]);
    const double frefl = eval(refl);
    if (frefl < vals[0]) {
      Eigen::VectorXd exp_pt = centroid + gamma * (refl - centroid);
      const double fexp = eval(exp_pt);
      if (fexp < frefl) {
        pts[n] = exp_pt;
        vals[n] = fexp;
      } else {
        pts[n] = refl;
        vals[n] = frefl;
      }
    } else if (frefl < vals[n - 1]) {
      pts[n] = refl;
      vals[n] = frefl;
    } else {
      Eigen::VectorXd contr = centroid + rho * (pts[n] - centroid);
      const double fcontr = eval(contr);
      if (fcontr < vals[n]) {
        pts[n] = contr;
        vals[n] = fcontr;
      } else {
        for (int i = 1; i <= n; ++i) {
          pts[i] = pts[0] + sigma * (pts[i] - pts[0]);
          vals[i] = eval(pts[i]);
          if (evals >= max_evals) break;
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (vals[i] < vals[best]) best = i;
  x = pts[best];
  return vals[best];
}

OptimizationResult optimize_local_measurements(
    const MeasurementObjective& objective,
    const std::vector<MeasurementFamily>& families, const OptimizerBudget& budget,
    std::uint64_t seed) {
  if (budget.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const int k = static_cast<int>(families.size());
  RandomStream root(seed);

  OptimizationResult result;
  result.restarts = budget.restarts;
  long evals = 0;

  for (int r = 0; r < budget.restarts; ++r) {
    RandomStream rng = root.derive(static_cast<std::uint64_t>(r));
    std::vector<Eigen::VectorXd> params(k);
    std::vector<Measurement> current;
    current.reserve(k);
    for (int s = 0; s < k; ++s) {
      params[s] = Eigen::VectorXd(families[s].param_count());
      for (int i = 0; i < params[s].size(); ++i) params[s](i) = rng.gaussian();
      current.push_back(families[s].realize(params[s]));
    }
    double val = objective(current);
    ++evals;

    for (int sweep = 0; sweep < budget.sweeps; ++sweep) {
      for (int s = 0; s < k; ++s) {
        if (families[s].param_count() == 0) continue;
        auto slot_obj = [&](const Eigen::VectorXd& p) {
          std::vector<Measurement> trial = current;
          trial[s] = families[s].realize(p);
          return -objective(trial);
        };
        Eigen::VectorXd x = params[s];
        const double neg = nelder_mead_minimize(slot_obj, x, 0.4, budget.max_evals);
        evals += budget.max_evals;
        if (-neg > val) {
          val = -neg;
          params[s] = x;
          current[s] = families[s].realize(x);
        }
      }
    }
    if (result.best.empty() || val > result.value) {
      result.value = val;
      result.best = current;
    }
  }
  result.evaluations = evals;
  return result;
}

}  // namespace qdf
