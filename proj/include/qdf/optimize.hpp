#pragma once

#include <functional>
#include <vector>

#include "qdf/measurement.hpp"
#include "qdf/random.hpp"

namespace qdf {

enum class FamilyKind { ProjectiveUnitary, TwoOutcomeOperator, Computational };

/// Parameterized search space of measurements. Every parameter value
/// realizes a valid Measurement:
///  - projective-unitary: d^2 reals build a hermitian generator H, the
///    measurement projects onto the columns of exp(iH);
///  - two-outcome-operator: d^2 reals build H, A squashes H's eigenvalues
///    into (0,1) via (tanh + 1)/2;
///  - computational: no parameters.
class MeasurementFamily {
 public:
  MeasurementFamily(FamilyKind kind, int dim) : kind_(kind), dim_(dim) {}

  FamilyKind kind() const { return kind_; }
  int dim() const { return dim_; }
  int param_count() const {
    return kind_ == FamilyKind::Computational ? 0 : dim_ * dim_;
  }

  Measurement realize(const Eigen::VectorXd& params) const;

 private:
  FamilyKind kind_;
  int dim_;
};

/// Builds the hermitian matrix encoded by d^2 real parameters (diagonal
/// first, then re/im of the upper triangle).
Matrix hermitian_from_params(int d, const Eigen::VectorXd& params);

struct OptimizerBudget {
  int restarts = 20;
  int sweeps = 3;          // coordinate-ascent passes over the slots
  int max_evals = 120;     // Nelder-Mead evaluations per slot update
  double scale() const { return 1.0; }
};

struct OptimizationResult {
  std::vector<Measurement> best;
  double value = 0.0;
  long evaluations = 0;
  int restarts = 0;
};

using MeasurementObjective =
    std::function<double(const std::vector<Measurement>&)>;

/// Coordinate ascent over k measurement slots with Nelder-Mead inner
/// updates; maximizes the objective and is deterministic given the seed.
/// The returned value is a certified lower bound on the true supremum.
OptimizationResult optimize_local_measurements(
    const MeasurementObjective& objective,
    const std::vector<MeasurementFamily>& families, const OptimizerBudget& budget,
    std::uint64_t seed);

/// Generic Nelder-Mead minimizer, bounded by an evaluation budget.
double nelder_mead_minimize(const std::function<double(const Eigen::VectorXd&)>& f,
                            Eigen::VectorXd& x, double initial_step, int max_evals);

}  // namespace qdf
