#include "qdf/random.hpp"

#include "qdf/symmetric.hpp"

namespace qdf {

Vector random_gaussian_vector(int dim, RandomStream& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    v(i) = Complex(re, im);
  }
  return v;
}

DensityMatrix random_pure_haar(const std::vector<int>& dims, RandomStream& rng) {
  int d = 1;
  for (int x : dims) d *= x;
  Vector v = random_gaussian_vector(d, rng);
  v.normalize();
  return PureState(dims, v).projector();
}

DensityMatrix random_mixed_hs(const std::vector<int>& dims, RandomStream& rng) {
  int d = 1;
  for (int x : dims) d *= x;
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + Matrix(rho.adjoint())) / 2.0;  // scrub roundoff asymmetry
  return DensityMatrix(dims, std::move(rho));
}

PureState random_symmetric_pure(int d, int n, RandomStream& rng) {
  auto sub = symmetric_subspace(d, n);
  Vector c = random_gaussian_vector(static_cast<int>(sub.occupations.size()), rng);
  c.normalize();
  Vector psi = sub.isometry * c;
  psi.normalize();
  return PureState(std::vector<int>(n, d), std::move(psi));
}

DensityMatrix random_state(StateKind kind, const std::vector<int>& dims,
                           std::uint64_t seed) {
  RandomStream rng(seed);
  switch (kind) {
    case StateKind::PureHaar:
      return random_pure_haar(dims, rng);
    case StateKind::MixedHS:
      return random_mixed_hs(dims, rng);
    case StateKind::SymmetricPure: {
      const int d = dims.at(0);
      const int n = static_cast<int>(dims.size());
      return random_symmetric_pure(d, n, rng).projector();
    }
  }
  throw std::logic_error("unknown state kind");
}

}  // namespace qdf
