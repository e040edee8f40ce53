#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

namespace qdf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace tol {
// Equality-type comparisons (trace, hermiticity, identities).
inline constexpr double eq = 1e-12;
// Eigenvalue noise floor for positivity checks.
inline constexpr double psd = 1e-10;
}  // namespace tol

/// Dense operator over a labeled tensor factorization. Factor 0 is the
/// most significant index: a basis vector |i_0 i_1 ... i_{m-1}> has flat
/// index ((i_0 d_1 + i_1) d_2 + i_2) ...
class Operator {
 public:
  Operator() = default;
  Operator(std::vector<int> factor_dims, Matrix data);

  static Operator identity(std::vector<int> factor_dims);

  const std::vector<int>& factor_dims() const { return dims_; }
  int num_factors() const { return static_cast<int>(dims_.size()); }
  int dim() const { return static_cast<int>(data_.rows()); }
  const Matrix& matrix() const { return data_; }
  Matrix& matrix() { return data_; }

  Complex trace() const { return data_.trace(); }

  bool is_hermitian() const;  // lazy, cached
  bool is_psd() const;        // lazy, cached (implies hermitian check)
  double min_eigenvalue() const;

  /// Frobenius distance to another operator of the same shape.
  double distance(const Operator& other) const;

  /// Sum of absolute eigenvalues (trace norm) of a hermitian operator.
  double trace_norm_hermitian() const;

  /// Replaces the factor structure, keeping the data. The product of the
  /// new dims must equal the matrix side.
  Operator reshaped(std::vector<int> new_dims) const;

 private:
  std::vector<int> dims_;
  Matrix data_;
  mutable std::optional<bool> hermitian_;
  mutable std::optional<bool> psd_;
};

/// Positive unit-trace operator. Hermiticity and trace are checked at
/// construction; positivity is checked lazily via validate().
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Operator op);
  DensityMatrix(std::vector<int> factor_dims, Matrix data)
      : DensityMatrix(Operator(std::move(factor_dims), std::move(data))) {}

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const std::vector<int>& factor_dims() const { return op_.factor_dims(); }
  int dim() const { return op_.dim(); }

  /// Forces the PSD check; throws if the minimum eigenvalue is below
  /// -tol::psd.
  void validate() const;

 private:
  Operator op_;
};

/// Density matrix over m identical factors commuting with all label
/// permutations. Adjacent transpositions are checked at construction.
class SymmetricState {
 public:
  SymmetricState() = default;
  explicit SymmetricState(DensityMatrix state);

  const DensityMatrix& state() const { return state_; }
  const Matrix& matrix() const { return state_.matrix(); }
  int n_parties() const { return state_.op().num_factors(); }
  int local_dim() const { return state_.factor_dims()[0]; }

 private:
  DensityMatrix state_;
};

/// Unit vector with a tensor factor structure.
class PureState {
 public:
  PureState() = default;
  PureState(std::vector<int> factor_dims, Vector v);

  const std::vector<int>& factor_dims() const { return dims_; }
  const Vector& vector() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }

  DensityMatrix projector() const;

 private:
  std::vector<int> dims_;
  Vector v_;
};

// --- tensor-product plumbing ---

Operator tensor_product(const Operator& a, const Operator& b);

/// Kronecker product of raw matrices.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron_vec(const Vector& a, const Vector& b);

/// Traces out the given factors (0-based). Trace is preserved.
Operator partial_trace(const Operator& g, const std::vector<int>& traced_factors);

/// U_sigma g U_sigma^dagger where U_sigma |u_0 ... u_{m-1}> =
/// |u_{sigma(0)} ... u_{sigma(m-1)}>.
Operator permutation_conjugate(const Operator& g, const std::vector<int>& sigma);

/// tr_S[(1 ⊗ E_S) g] for operators E attached to a set of slots S; returns
/// an operator on the complementary factors. Slots not listed are kept.
Operator partial_contract(const Operator& g,
                          const std::vector<std::pair<int, Matrix>>& slot_ops);

/// k-party reduced state of a symmetric state, canonicalized to the first
/// k factors.
Operator reduced(const SymmetricState& g, int k);

/// Checks every adjacent transposition; max Frobenius deviation.
double symmetry_defect(const Operator& g);

int flat_index(const std::vector<int>& dims, const std::vector<int>& digits);
std::vector<int> strides_of(const std::vector<int>& dims);

}  // namespace qdf
