#include "qdf/lattice.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace qdf {

double LatticeModel::coordinate(int i) const {
  if (boundary == Boundary::Periodic) return i * h_x;
  return (i - (sites_per_axis - 1) / 2.0) * h_x;  // centered trap
}

double LatticeModel::displacement(int i, int j) const {
  if (boundary == Boundary::Periodic) {
    int r = (i - j) % sites_per_axis;
    if (r < 0) r += sites_per_axis;
    if (r >= (sites_per_axis + 1) / 2) r -= sites_per_axis;
    return r * h_x;
  }
  return (i - j) * h_x;
}

namespace {

void site_coords(const LatticeModel& m, int site, int* ix, int* iy) {
  if (m.space_dim == 1) {
    *ix = site;
    *iy = 0;
  } else {
    *ix = site / m.sites_per_axis;
    *iy = site % m.sites_per_axis;
  }
}

double potential_at(const LatticeModel& m, int site) {
  if (!m.potential) return 0.0;
  int ix, iy;
  site_coords(m, site, &ix, &iy);
  return m.potential(m.coordinate(ix), m.space_dim == 2 ? m.coordinate(iy) : 0.0);
}

}  // namespace

Operator build_one_body(const LatticeModel& model) {
  if (model.space_dim != 1 && model.space_dim != 2)
    throw std::invalid_argument("space_dim must be 1 or 2");
  const int l = model.sites_per_axis;
  const int dim = model.n_sites();
  const double hop = 1.0 / (model.h_x * model.h_x);
  const bool periodic = model.boundary == Boundary::Periodic;

  Matrix h = Matrix::Zero(dim, dim);
  for (int s = 0; s < dim; ++s)
    h(s, s) = 2.0 * model.space_dim * hop + potential_at(model, s);

  // x-links first, then y-links, matching link_field layout.
  int link = 0;
  auto add_hop = [&](int from, int to) {
    const double a = link < static_cast<int>(model.link_field.size())
                         ? model.link_field[link]
                         : 0.0;
    ++link;
    const Complex phase = std::exp(Complex(0.0, a * model.h_x));
    h(to, from) += -hop * phase;
    h(from, to) += -hop * std::conj(phase);
  };
  auto site_of = [&](int ix, int iy) {
    return model.space_dim == 1 ? ix : ix * l + iy;
  };
  for (int ix = 0; ix < l; ++ix)
    for (int iy = 0; iy < (model.space_dim == 2 ? l : 1); ++iy) {
      if (ix + 1 < l || periodic) add_hop(site_of(ix, iy), site_of((ix + 1) % l, iy));
    }
  if (model.space_dim == 2)
    for (int ix = 0; ix < l; ++ix)
      for (int iy = 0; iy < l; ++iy)
        if (iy + 1 < l || periodic) add_hop(site_of(ix, iy), site_of(ix, (iy + 1) % l));

  return Operator({dim}, std::move(h));
}

SpectralProjector spectral_projector(const Operator& h, double cutoff) {
  if (!h.is_hermitian()) throw std::invalid_argument("spectral projector needs hermitian h");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  SpectralProjector out;
  Matrix p = Matrix::Zero(h.dim(), h.dim());
  for (int i = 0; i < h.dim(); ++i)
    if (es.eigenvalues()(i) <= cutoff) {
      p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      ++out.n_lambda;
    }
  out.p = Operator({h.dim()}, std::move(p));
  return out;
}

ScaledInteraction scaled_interaction(const LatticeModel& model) {
  if (!model.interaction) {
    ScaledInteraction out;
    out.w = Eigen::MatrixXd::Zero(model.n_sites(), model.n_sites());
    return out;
  }
  const int dim = model.n_sites();
  const double scale = std::pow(double(model.n_particles), model.beta);
  const double factor = std::pow(scale, model.space_dim);  // N^{d beta}

  ScaledInteraction out;
  out.w = Eigen::MatrixXd(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      int ix, iy, jx, jy;
      site_coords(model, i, &ix, &iy);
      site_coords(model, j, &jx, &jy);
      const double dx = model.displacement(ix, jx);
      const double dy = model.space_dim == 2 ? model.displacement(iy, jy) : 0.0;
      out.w(i, j) = factor * model.interaction(scale * dx, scale * dy);
    }

  // Quadrature integral of the unscaled w on a symmetric displacement grid.
  const int half = model.sites_per_axis - 1;
  double quad = 1.0;
  for (int axis = 0; axis < model.space_dim; ++axis) quad *= model.h_x;
  double sum = 0.0;
  if (model.space_dim == 1) {
    for (int r = -half; r <= half; ++r) sum += model.interaction(r * model.h_x, 0.0);
  } else {
    for (int rx = -half; rx <= half; ++rx)
      for (int ry = -half; ry <= half; ++ry)
        sum += model.interaction(rx * model.h_x, ry * model.h_x);
  }
  out.a = quad * sum;

  const double w0 = std::abs(model.interaction(0.0, 0.0));
  const double w1 = std::abs(model.interaction(scale * model.h_x, 0.0));
  out.under_resolved = w0 > 0.0 && w1 < 1e-6 * w0;
  return out;
}

std::vector<FourierPairTerm> fourier_pair_decomposition(const ScaledInteraction& wmat,
                                                        const LatticeModel& model) {
  if (model.space_dim != 1)
    throw std::invalid_argument("pair decomposition implemented for 1D lattices");
  if (model.boundary != Boundary::Periodic)
    throw std::invalid_argument("pair decomposition needs a periodic lattice");
  const int l = model.sites_per_axis;

  std::vector<double> v(l);
  for (int r = 0; r < l; ++r) v[r] = wmat.w(r, 0);
  for (int r = 1; r < l; ++r)
    if (std::abs(v[r] - v[(l - r) % l]) > 1e-12)
      throw std::invalid_argument("pair decomposition needs an even interaction");

  std::vector<FourierPairTerm> terms;
  for (int p = 0; p < l; ++p) {
    double what = 0.0;
    for (int r = 0; r < l; ++r) what += v[r] * std::cos(2.0 * M_PI * p * r / l);
    what /= l;
    if (std::abs(what) < 1e-15) continue;

    FourierPairTerm t;
    t.weight = what;
    t.momentum = 2.0 * M_PI * p / (l * model.h_x);
    t.c_plus = Eigen::MatrixXd::Zero(l, l);
    t.c_minus = Eigen::MatrixXd::Zero(l, l);
    t.s_plus = Eigen::MatrixXd::Zero(l, l);
    t.s_minus = Eigen::MatrixXd::Zero(l, l);
    for (int i = 0; i < l; ++i) {
      const double c = std::cos(2.0 * M_PI * p * i / l);
      const double s = std::sin(2.0 * M_PI * p * i / l);
      t.c_plus(i, i) = std::max(c, 0.0);
      t.c_minus(i, i) = std::max(-c, 0.0);
      t.s_plus(i, i) = std::max(s, 0.0);
      t.s_minus(i, i) = std::max(-s, 0.0);
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

Eigen::MatrixXd fourier_reconstruction(const std::vector<FourierPairTerm>& terms) {
  if (terms.empty()) return Eigen::MatrixXd::Zero(0, 0);
  const int l = static_cast<int>(terms[0].c_plus.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(l * l, l * l);
  for (const auto& t : terms) {
    const Eigen::MatrixXd* c[2] = {&t.c_plus, &t.c_minus};
    const Eigen::MatrixXd* s[2] = {&t.s_plus, &t.s_minus};
    const double sign[2] = {1.0, -1.0};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int i = 0; i < l; ++i)
          for (int j = 0; j < l; ++j)
            out(i * l + j, i * l + j) +=
                t.weight * sign[a] * sign[b] *
                ((*c[a])(i, i) * (*c[b])(j, j) + (*s[a])(i, i) * (*s[b])(j, j));
  }
  return out;
}

double fourier_l1_weight(const std::vector<FourierPairTerm>& terms) {
  double s = 0.0;
  for (const auto& t : terms) s += std::abs(t.weight);
  return s;
}

PotentialFn harmonic_potential(double coeff) {
  return [coeff](double x, double y) { return coeff * (x * x + y * y); };
}

InteractionFn gaussian_interaction(double amplitude, double width) {
  return [amplitude, width](double dx, double dy) {
    return amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
  };
}

InteractionFn top_hat_interaction(double amplitude, double radius) {
  return [amplitude, radius](double dx, double dy) {
    return dx * dx + dy * dy <= radius * radius ? amplitude : 0.0;
  };
}

}  // namespace qdf
