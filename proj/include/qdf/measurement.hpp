#pragma once

#include <vector>

#include "qdf/operator.hpp"

namespace qdf {

struct MeasurementElement {
  Matrix m;   // POVM element, psd
  int label;  // output basis index, distinct per element
};

/// Finite POVM whose outcomes are written onto an orthonormal register
/// basis. Output labels are abstract integers in [0, out_dim).
class Measurement {
 public:
  Measurement(int dim, std::vector<MeasurementElement> elements, int out_dim = -1);

  static Measurement computational(int d);
  /// Single-outcome measurement (identity element), the unit for tensoring.
  static Measurement trivial(int d);
  /// Rank-one projective measurement onto the columns of a unitary; valid
  /// by construction, skips the numeric completeness check.
  static Measurement projective_from_unitary(const Matrix& u);

  int dim() const { return dim_; }
  int out_dim() const { return out_dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const MeasurementElement& element(int i) const { return elements_[i]; }
  const std::vector<MeasurementElement>& elements() const { return elements_; }

  /// Lambda(rho) = sum_k tr[M_k rho] |e_k><e_k|, diagonal on out_dim.
  DensityMatrix apply(const DensityMatrix& rho) const;

  /// tr[M_i rho] per element, in element order.
  std::vector<double> outcome_distribution(const Matrix& rho) const;

 private:
  struct Trusted {};
  Measurement(Trusted, int dim, std::vector<MeasurementElement> elements, int out_dim);

  int dim_ = 0;
  int out_dim_ = 0;
  std::vector<MeasurementElement> elements_;
};

/// Elementwise pairs (M_i ⊗ M_j, e_i ⊗ e_j).
Measurement tensor_measurement(const Measurement& l1, const Measurement& l2);

/// (1 ⊗ Λ) Γ with the measurement acting on target_factor; the classical
/// register replaces that factor (dimension becomes out_dim).
Operator partial_measurement(const Measurement& lambda, int target_factor,
                             const Operator& gamma);

/// Two-outcome embedding {A -> e_0, 1-A -> e_1} of an operator 0 <= A <= 1.
Measurement two_outcome_from_operator(const Matrix& a);

/// Exact trace norm of (Λ_1 ⊗ ... ⊗ Λ_k) Δ, i.e. the sum over outcome
/// tuples of |tr[(M_{i_1} ⊗ ... ⊗ M_{i_k}) Δ]|.
double measured_trace_norm(const std::vector<Measurement>& lambdas,
                           const Operator& delta);

/// Joint outcome distribution of local measurements on every factor.
std::vector<double> joint_outcome_distribution(
    const std::vector<Measurement>& lambdas, const Operator& gamma);

}  // namespace qdf
