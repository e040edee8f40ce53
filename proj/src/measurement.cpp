#include "qdf/measurement.hpp"

#include <Eigen/Eigenvalues>
#include <numeric>
#include <stdexcept>

namespace qdf {

Measurement::Measurement(int dim, std::vector<MeasurementElement> elements, int out_dim)
    : dim_(dim), elements_(std::move(elements)) {
  Matrix sum = Matrix::Zero(dim_, dim_);
  int max_label = -1;
  for (const auto& e : elements_) {
    if (e.m.rows() != dim_ || e.m.cols() != dim_)
      throw std::invalid_argument("measurement element has wrong dimension");
    Eigen::SelfAdjointEigenSolver<Matrix> es(e.m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::psd)
      throw std::invalid_argument("measurement element is not psd");
    sum += e.m;
    max_label = std::max(max_label, e.label);
  }
  if ((sum - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("measurement elements must sum to identity");
  out_dim_ = out_dim > 0 ? out_dim : max_label + 1;
  if (max_label >= out_dim_) throw std::invalid_argument("label outside output basis");
}

Measurement::Measurement(Trusted, int dim, std::vector<MeasurementElement> elements,
                         int out_dim)
    : dim_(dim), out_dim_(out_dim), elements_(std::move(elements)) {}

Measurement Measurement::computational(int d) {
  std::vector<MeasurementElement> els;
  for (int k = 0; k < d; ++k) {
    Matrix m = Matrix::Zero(d, d);
    m(k, k) = 1.0;
    els.push_back({std::move(m), k});
  }
  return Measurement(Trusted{}, d, std::move(els), d);
}

Measurement Measurement::trivial(int d) {
  std::vector<MeasurementElement> els;
  els.push_back({Matrix::Identity(d, d), 0});
  return Measurement(Trusted{}, d, std::move(els), 1);
}

Measurement Measurement::projective_from_unitary(const Matrix& u) {
  const int d = static_cast<int>(u.rows());
  std::vector<MeasurementElement> els;
  els.reserve(d);
  for (int k = 0; k < d; ++k) els.push_back({u.col(k) * u.col(k).adjoint(), k});
  return Measurement(Trusted{}, d, std::move(els), d);
}

DensityMatrix Measurement::apply(const DensityMatrix& rho) const {
  if (rho.dim() != dim_) throw std::invalid_argument("measurement/state dimension mismatch");
  Matrix out = Matrix::Zero(out_dim_, out_dim_);
  for (const auto& e : elements_)
    out(e.label, e.label) += (e.m.adjoint() * rho.matrix()).trace().real();
  return DensityMatrix({out_dim_}, std::move(out));
}

std::vector<double> Measurement::outcome_distribution(const Matrix& rho) const {
  std::vector<double> p;
  p.reserve(elements_.size());
  for (const auto& e : elements_)
    p.push_back((e.m.transpose().cwiseProduct(rho)).sum().real());
  return p;
}

Measurement tensor_measurement(const Measurement& l1, const Measurement& l2) {
  std::vector<MeasurementElement> els;
  els.reserve(l1.size() * l2.size());
  for (const auto& a : l1.elements())
    for (const auto& b : l2.elements())
      els.push_back({kron(a.m, b.m), a.label * l2.out_dim() + b.label});
  return Measurement(l1.dim() * l2.dim(), std::move(els), l1.out_dim() * l2.out_dim());
}

Operator partial_measurement(const Measurement& lambda, int target_factor,
                             const Operator& gamma) {
  const auto& dims = gamma.factor_dims();
  const int m = gamma.num_factors();
  if (target_factor < 0 || target_factor >= m)
    throw std::out_of_range("partial_measurement target out of range");
  if (dims[target_factor] != lambda.dim())
    throw std::invalid_argument("partial_measurement dimension mismatch");

  std::vector<int> rest_dims;
  for (int i = 0; i < m; ++i)
    if (i != target_factor) rest_dims.push_back(dims[i]);

  // Register appended last, then rotated into the measured slot.
  Operator acc = Operator(std::vector<int>{1}, Matrix::Zero(1, 1));
  bool first = true;
  for (const auto& e : lambda.elements()) {
    Operator cond = partial_contract(gamma, {{target_factor, e.m}});
    Matrix reg = Matrix::Zero(lambda.out_dim(), lambda.out_dim());
    reg(e.label, e.label) = 1.0;
    Operator term = tensor_product(cond, Operator({lambda.out_dim()}, reg));
    if (first) {
      acc = term;
      first = false;
    } else {
      acc.matrix() += term.matrix();
    }
  }
  // Move the last factor back to target position.
  std::vector<int> sigma;
  int rest_idx = 0;
  for (int j = 0; j < m; ++j) {
    if (j == target_factor)
      sigma.push_back(m - 1);
    else
      sigma.push_back(rest_idx++);
  }
  return permutation_conjugate(acc, sigma);
}

Measurement two_outcome_from_operator(const Matrix& a) {
  const int d = static_cast<int>(a.rows());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("two-outcome operator must be hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10 || es.eigenvalues().maxCoeff() > 1.0 + 1e-10)
    throw std::invalid_argument("two-outcome operator must satisfy 0 <= A <= 1");
  std::vector<MeasurementElement> els;
  els.push_back({a, 0});
  els.push_back({Matrix::Identity(d, d) - a, 1});
  return Measurement(d, std::move(els), 2);
}

double measured_trace_norm(const std::vector<Measurement>& lambdas,
                           const Operator& delta) {
  const auto& dims = delta.factor_dims();
  const int k = delta.num_factors();
  if (static_cast<int>(lambdas.size()) != k)
    throw std::invalid_argument("need one measurement per factor");
  for (int i = 0; i < k; ++i)
    if (lambdas[i].dim() != dims[i])
      throw std::invalid_argument("measurement dimension mismatch");

  std::vector<int> idx(k, 0);
  double total = 0.0;
  while (true) {
    Matrix e = lambdas[0].element(idx[0]).m;
    for (int i = 1; i < k; ++i) e = kron(e, lambdas[i].element(idx[i]).m);
    total += std::abs((e.transpose().cwiseProduct(delta.matrix())).sum());
    int i = k - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < lambdas[i].size()) break;
      idx[i] = 0;
    }
    if (i < 0) break;
  }
  return total;
}

std::vector<double> joint_outcome_distribution(
    const std::vector<Measurement>& lambdas, const Operator& gamma) {
  const int k = gamma.num_factors();
  if (static_cast<int>(lambdas.size()) != k)
    throw std::invalid_argument("need one measurement per factor");
  std::vector<int> idx(k, 0);
  std::vector<double> p;
  while (true) {
    Matrix e = lambdas[0].element(idx[0]).m;
    for (int i = 1; i < k; ++i) e = kron(e, lambdas[i].element(idx[i]).m);
    p.push_back((e.transpose().cwiseProduct(gamma.matrix())).sum().real());
    int i = k - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < lambdas[i].size()) break;
      idx[i] = 0;
    }
    if (i < 0) break;
  }
  return p;
}

}  // namespace qdf
