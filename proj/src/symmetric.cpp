#include "qdf/symmetric.hpp"

#include <cmath>
#include <stdexcept>

namespace qdf {

std::int64_t symmetric_dimension(int d, int n) {
  // C(n+d-1, n) without intermediate overflow for desk-scale inputs.
  long double v = 1.0L;
  for (int i = 1; i <= n; ++i) v = v * (d - 1 + i) / i;
  return static_cast<std::int64_t>(std::llroundl(v));
}

std::vector<std::vector<int>> occupation_basis(int d, int n, std::int64_t dim_cap) {
  if (d < 1 || n < 1) throw std::invalid_argument("occupation_basis: d, n must be >= 1");
  if (symmetric_dimension(d, n) > dim_cap)
    throw std::runtime_error("symmetric-subspace dimension exceeds cap");
  std::vector<std::vector<int>> basis;
  std::vector<int> occ(d, 0);
  // Recursive enumeration, first mode descending.
  auto rec = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == d - 1) {
      occ[mode] = remaining;
      basis.push_back(occ);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      occ[mode] = c;
      self(self, mode + 1, remaining - c);
    }
  };
  rec(rec, 0, n);
  return basis;
}

SymmetricSubspace symmetric_subspace(int d, int n, std::int64_t dim_cap) {
  auto occs = occupation_basis(d, n, dim_cap);
  double full_dim = std::pow(static_cast<double>(d), n);
  if (full_dim > 4.2e6) throw std::runtime_error("tensor-power dimension too large for dense isometry");
  const int D = static_cast<int>(full_dim + 0.5);
  const int m = static_cast<int>(occs.size());

  // Map each occupation vector to a column index.
  auto occ_index = [&](const std::vector<int>& o) {
    for (int c = 0; c < m; ++c)
      if (occs[c] == o) return c;
    throw std::logic_error("occupation lookup failed");
  };

  Matrix W = Matrix::Zero(D, m);
  std::vector<int> word(n, 0);
  std::vector<int> content(d, 0);
  for (int I = 0; I < D; ++I) {
    std::fill(content.begin(), content.end(), 0);
    for (int j = 0; j < n; ++j) ++content[word[j]];
    W(I, occ_index(content)) += 1.0;
    for (int j = n - 1; j >= 0; --j) {
      if (++word[j] < d) break;
      word[j] = 0;
    }
  }
  for (int c = 0; c < m; ++c) W.col(c).normalize();
  return {std::move(occs), std::move(W)};
}

}  // namespace qdf
