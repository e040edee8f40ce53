#include "qdf/operator.hpp"

#include <Eigen/Eigenvalues>
#include <numeric>
#include <stdexcept>

namespace qdf {

namespace {

int product(const std::vector<int>& dims) {
  int p = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("factor dimension must be >= 1");
    p *= d;
  }
  return p;
}

}  // namespace

std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size());
  int acc = 1;
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

int flat_index(const std::vector<int>& dims, const std::vector<int>& digits) {
  int idx = 0;
  for (size_t i = 0; i < dims.size(); ++i) idx = idx * dims[i] + digits[i];
  return idx;
}

Operator::Operator(std::vector<int> factor_dims, Matrix data)
    : dims_(std::move(factor_dims)), data_(std::move(data)) {
  const int d = product(dims_);
  if (data_.rows() != data_.cols() || data_.rows() != d)
    throw std::invalid_argument("operator data must be square with side = product of factor dims");
}

Operator Operator::identity(std::vector<int> factor_dims) {
  const int d = product(factor_dims);
  return Operator(std::move(factor_dims), Matrix::Identity(d, d));
}

bool Operator::is_hermitian() const {
  if (!hermitian_)
    hermitian_ = (data_ - data_.adjoint()).cwiseAbs().maxCoeff() <= tol::eq;
  return *hermitian_;
}

double Operator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(data_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool Operator::is_psd() const {
  if (!psd_) psd_ = is_hermitian() && min_eigenvalue() >= -tol::psd;
  return *psd_;
}

double Operator::distance(const Operator& other) const {
  return (data_ - other.data_).norm();
}

double Operator::trace_norm_hermitian() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(data_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

Operator Operator::reshaped(std::vector<int> new_dims) const {
  if (product(new_dims) != dim())
    throw std::invalid_argument("reshape must preserve total dimension");
  return Operator(std::move(new_dims), data_);
}

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  if (!op_.is_hermitian()) throw std::invalid_argument("density matrix must be hermitian");
  if (std::abs(op_.trace().real() - 1.0) > 1e-9 || std::abs(op_.trace().imag()) > 1e-9)
    throw std::invalid_argument("density matrix must have unit trace");
}

void DensityMatrix::validate() const {
  if (!op_.is_psd()) throw std::runtime_error("density matrix fails positivity check");
}

SymmetricState::SymmetricState(DensityMatrix state) : state_(std::move(state)) {
  const auto& dims = state_.factor_dims();
  for (size_t i = 1; i < dims.size(); ++i)
    if (dims[i] != dims[0])
      throw std::invalid_argument("symmetric state needs identical factors");
  if (symmetry_defect(state_.op()) > 1e-10)
    throw std::invalid_argument("state is not permutation symmetric");
}

PureState::PureState(std::vector<int> factor_dims, Vector v)
    : dims_(std::move(factor_dims)), v_(std::move(v)) {
  if (product(dims_) != v_.size())
    throw std::invalid_argument("vector length must equal product of factor dims");
  if (std::abs(v_.norm() - 1.0) > tol::eq * 100)
    throw std::invalid_argument("pure state vector must be normalized");
}

DensityMatrix PureState::projector() const {
  return DensityMatrix(Operator(dims_, v_ * v_.adjoint()));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Operator tensor_product(const Operator& a, const Operator& b) {
  std::vector<int> dims = a.factor_dims();
  dims.insert(dims.end(), b.factor_dims().begin(), b.factor_dims().end());
  return Operator(std::move(dims), kron(a.matrix(), b.matrix()));
}

Operator partial_trace(const Operator& g, const std::vector<int>& traced_factors) {
  const auto& dims = g.factor_dims();
  const int m = g.num_factors();
  std::vector<bool> traced(m, false);
  for (int t : traced_factors) {
    if (t < 0 || t >= m) throw std::out_of_range("traced factor index out of range");
    traced[t] = true;
  }
  std::vector<int> kept_dims, kept_pos, tr_pos;
  for (int i = 0; i < m; ++i)
    (traced[i] ? tr_pos : kept_pos).push_back(i);
  for (int i : kept_pos) kept_dims.push_back(dims[i]);

  const auto strides = strides_of(dims);
  int dk = 1, dt = 1;
  for (int i : kept_pos) dk *= dims[i];
  for (int i : tr_pos) dt *= dims[i];

  // Flat offsets contributed by each kept / traced multi-index.
  std::vector<int> kept_off(dk, 0), tr_off(dt, 0);
  {
    std::vector<int> digit(kept_pos.size(), 0);
    for (int a = 0; a < dk; ++a) {
      int off = 0;
      for (size_t i = 0; i < kept_pos.size(); ++i) off += digit[i] * strides[kept_pos[i]];
      kept_off[a] = off;
      for (int i = static_cast<int>(kept_pos.size()) - 1; i >= 0; --i) {
        if (++digit[i] < dims[kept_pos[i]]) break;
        digit[i] = 0;
      }
    }
    std::vector<int> tdigit(tr_pos.size(), 0);
    for (int t = 0; t < dt; ++t) {
      int off = 0;
      for (size_t i = 0; i < tr_pos.size(); ++i) off += tdigit[i] * strides[tr_pos[i]];
      tr_off[t] = off;
      for (int i = static_cast<int>(tr_pos.size()) - 1; i >= 0; --i) {
        if (++tdigit[i] < dims[tr_pos[i]]) break;
        tdigit[i] = 0;
      }
    }
  }

  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& G = g.matrix();
  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b) {
      Complex s = 0;
      for (int t = 0; t < dt; ++t) s += G(kept_off[a] + tr_off[t], kept_off[b] + tr_off[t]);
      out(a, b) = s;
    }
  if (kept_dims.empty()) kept_dims.push_back(1);
  return Operator(std::move(kept_dims), std::move(out));
}

Operator permutation_conjugate(const Operator& g, const std::vector<int>& sigma) {
  const auto& dims = g.factor_dims();
  const int m = g.num_factors();
  if (static_cast<int>(sigma.size()) != m)
    throw std::invalid_argument("permutation size must match factor count");
  std::vector<bool> seen(m, false);
  for (int s : sigma) {
    if (s < 0 || s >= m || seen[s]) throw std::invalid_argument("invalid permutation");
    seen[s] = true;
  }
  std::vector<int> out_dims(m);
  for (int j = 0; j < m; ++j) out_dims[j] = dims[sigma[j]];
  const auto in_strides = strides_of(dims);
  const auto out_strides = strides_of(out_dims);
  const int D = g.dim();

  // map[I] = flat index of U_sigma e_I
  std::vector<int> map(D);
  std::vector<int> digit(m, 0);
  for (int I = 0; I < D; ++I) {
    int J = 0;
    for (int j = 0; j < m; ++j) J += digit[sigma[j]] * out_strides[j];
    map[I] = J;
    for (int i = m - 1; i >= 0; --i) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }
  Matrix out(D, D);
  const Matrix& G = g.matrix();
  for (int I = 0; I < D; ++I)
    for (int Ip = 0; Ip < D; ++Ip) out(map[I], map[Ip]) = G(I, Ip);
  return Operator(std::move(out_dims), std::move(out));
}

Operator partial_contract(const Operator& g,
                          const std::vector<std::pair<int, Matrix>>& slot_ops) {
  const auto& dims = g.factor_dims();
  const int m = g.num_factors();
  std::vector<const Matrix*> attached(m, nullptr);
  for (const auto& [slot, mat] : slot_ops) {
    if (slot < 0 || slot >= m) throw std::out_of_range("contract slot out of range");
    if (mat.rows() != dims[slot] || mat.cols() != dims[slot])
      throw std::invalid_argument("contract element has wrong dimension");
    attached[slot] = &mat;
  }
  std::vector<int> kept_pos, c_pos, kept_dims;
  for (int i = 0; i < m; ++i) (attached[i] ? c_pos : kept_pos).push_back(i);
  for (int i : kept_pos) kept_dims.push_back(dims[i]);

  const auto strides = strides_of(dims);
  int dk = 1, dc = 1;
  for (int i : kept_pos) dk *= dims[i];
  for (int i : c_pos) dc *= dims[i];

  std::vector<int> kept_off(dk, 0);
  {
    std::vector<int> digit(kept_pos.size(), 0);
    for (int a = 0; a < dk; ++a) {
      int off = 0;
      for (size_t i = 0; i < kept_pos.size(); ++i) off += digit[i] * strides[kept_pos[i]];
      kept_off[a] = off;
      for (int i = static_cast<int>(kept_pos.size()) - 1; i >= 0; --i) {
        if (++digit[i] < dims[kept_pos[i]]) break;
        digit[i] = 0;
      }
    }
  }
  // Offsets and element weights for the contracted multi-indices: the
  // result is out(a,b) = sum_{r,c} E(c,r) G(off_a + off_r, off_b + off_c)
  // realizing tr_S[(1 ⊗ E) G] with E the tensor product over attached slots.
  struct COff {
    int off;
    std::vector<int> digits;
  };
  std::vector<COff> coffs(dc);
  {
    std::vector<int> digit(c_pos.size(), 0);
    for (int t = 0; t < dc; ++t) {
      int off = 0;
      for (size_t i = 0; i < c_pos.size(); ++i) off += digit[i] * strides[c_pos[i]];
      coffs[t] = {off, digit};
      for (int i = static_cast<int>(c_pos.size()) - 1; i >= 0; --i) {
        if (++digit[i] < dims[c_pos[i]]) break;
        digit[i] = 0;
      }
    }
  }
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& G = g.matrix();
  for (int r = 0; r < dc; ++r)
    for (int c = 0; c < dc; ++c) {
      Complex w = 1.0;
      for (size_t i = 0; i < c_pos.size(); ++i)
        w *= (*attached[c_pos[i]])(coffs[c].digits[i], coffs[r].digits[i]);
      if (w == Complex(0.0)) continue;
      for (int a = 0; a < dk; ++a)
        for (int b = 0; b < dk; ++b)
          out(a, b) += w * G(kept_off[a] + coffs[r].off, kept_off[b] + coffs[c].off);
    }
  if (kept_dims.empty()) kept_dims.push_back(1);
  return Operator(std::move(kept_dims), std::move(out));
}

Operator reduced(const SymmetricState& g, int k) {
  const int n = g.n_parties();
  if (k < 1 || k > n) throw std::invalid_argument("reduced: k out of range");
  std::vector<int> traced;
  for (int i = k; i < n; ++i) traced.push_back(i);
  return partial_trace(g.state().op(), traced);
}

double symmetry_defect(const Operator& g) {
  const int m = g.num_factors();
  double worst = 0.0;
  for (int i = 0; i + 1 < m; ++i) {
    std::vector<int> sigma(m);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::swap(sigma[i], sigma[i + 1]);
    worst = std::max(worst, permutation_conjugate(g, sigma).distance(g));
  }
  return worst;
}

}  // namespace qdf
