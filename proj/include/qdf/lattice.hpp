#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qdf/operator.hpp"

namespace qdf {

enum class Boundary { Dirichlet, Periodic };

/// Pair interaction as a function of the displacement components
/// (dy is ignored in 1D).
using InteractionFn = std::function<double(double dx, double dy)>;
using PotentialFn = std::function<double(double x, double y)>;

/// Uniform grid in 1 or 2 dimensions with a trapping potential V, optional
/// link field A (Peierls phases), an even pair interaction w, the scaling
/// exponent beta and the particle number N.
///
/// Mode vectors are plain l2 vectors; h_x^space_dim converts site sums to
/// quadrature integrals when a continuum quantity is needed.
struct LatticeModel {
  int space_dim = 1;
  int sites_per_axis = 12;  // L
  double h_x = 0.5;
  PotentialFn potential;          // V(x) per site; empty = 0
  std::vector<double> link_field; // A per link (x-links then y-links); empty = 0
  InteractionFn interaction;      // w(x); empty = 0
  double beta = 0.0;
  int n_particles = 2;
  Boundary boundary = Boundary::Dirichlet;

  int n_sites() const {
    int n = sites_per_axis;
    for (int i = 1; i < space_dim; ++i) n *= sites_per_axis;
    return n;
  }
  /// Coordinate of a site (centered for Dirichlet, [0, L h_x) for periodic).
  double coordinate(int index_along_axis) const;
  /// Minimum-image displacement between two indices along one axis.
  double displacement(int i, int j) const;
};

struct ScaledInteraction {
  Eigen::MatrixXd w;       // w_{N,beta}(x_i - x_j) over site pairs
  double a = 0.0;          // h_x^d * sum of the unscaled w (integral of w)
  bool under_resolved = false;  // support of w_{N,beta} narrower than one cell
};

/// h = (-i nabla + A)^2 + V: second-order central differences with Peierls
/// phases on the hopping links, plus the diagonal potential.
Operator build_one_body(const LatticeModel& model);

struct SpectralProjector {
  Operator p;      // projector onto eigenvalues <= cutoff
  int n_lambda = 0;  // rank
};

SpectralProjector spectral_projector(const Operator& h, double cutoff);

/// w_{N,beta}(x) = N^{d beta} w(N^beta x) sampled at lattice displacements.
ScaledInteraction scaled_interaction(const LatticeModel& model);

/// One term of the pair decomposition of a periodic displacement kernel:
/// weight * [sum_{i,j in {+,-}} sign(i) sign(j) (c^i x c^j + s^i x s^j)].
/// The cos/sin factors are split into their positive and negative parts so
/// that every factor has operator norm <= 1; the signs restore the product
/// cos(px)cos(py) + sin(px)sin(py) = cos(p(x-y)).
struct FourierPairTerm {
  double weight = 0.0;  // what(p)
  double momentum = 0.0;
  Eigen::MatrixXd c_plus, c_minus, s_plus, s_minus;  // diagonal factors
};

/// Discrete Fourier decomposition W(x - y) = sum_p what(p) e^{ipx} e^{-ipy}
/// on a 1D periodic lattice.
std::vector<FourierPairTerm> fourier_pair_decomposition(const ScaledInteraction& wmat,
                                                        const LatticeModel& model);

/// Dense two-body matrix rebuilt from the decomposition terms.
Eigen::MatrixXd fourier_reconstruction(const std::vector<FourierPairTerm>& terms);

/// sum_p |what(p)|, the l1 weight entering the energy error terms.
double fourier_l1_weight(const std::vector<FourierPairTerm>& terms);

// Preset ingredients used by configs and tests.
PotentialFn harmonic_potential(double coeff = 1.0);
InteractionFn gaussian_interaction(double amplitude, double width);
InteractionFn top_hat_interaction(double amplitude, double radius);

}  // namespace qdf
