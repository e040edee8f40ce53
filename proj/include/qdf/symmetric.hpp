#pragma once

#include <cstdint>
#include <vector>

#include "qdf/operator.hpp"

namespace qdf {

/// Occupation-number basis of the n-particle bosonic space over d modes.
/// Ordering is lexicographic with the first mode's occupation descending,
/// so d=2, n=2 enumerates |20>, |11>, |02>.
std::vector<std::vector<int>> occupation_basis(int d, int n,
                                               std::int64_t dim_cap = 200000);

std::int64_t symmetric_dimension(int d, int n);

struct SymmetricSubspace {
  std::vector<std::vector<int>> occupations;
  Matrix isometry;  // d^n x C(n+d-1, n), satisfies W^dagger W = I
};

/// Occupation basis plus the isometry embedding it into the n-fold tensor
/// power. Only available while d^n stays dense-friendly.
SymmetricSubspace symmetric_subspace(int d, int n, std::int64_t dim_cap = 200000);

}  // namespace qdf
