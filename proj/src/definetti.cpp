#include "qdf/definetti.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "qdf/information.hpp"

namespace qdf {

namespace {

constexpr double kPruneWeight = 1e-14;

/// tr_last[(1 ⊗ M) G] for a joint operator M on the trailing block of
/// size dt; returns the dk x dk leading block contraction.
Matrix trailing_contract(const Matrix& g, int dk, const Matrix& m) {
  const int dt = static_cast<int>(m.rows());
  Matrix out = Matrix::Zero(dk, dk);
  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b) {
      Complex s = 0;
      for (int r = 0; r < dt; ++r)
        for (int c = 0; c < dt; ++c) s += m(c, r) * g(a * dt + r, b * dt + c);
      out(a, b) = s;
    }
  return out;
}

/// KL divergence with the support inclusion guaranteed analytically
/// (measured marginal dominates the joint); clamps roundoff zeros.
double kl_clamped(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 1e-14) continue;
    s += p[i] * (std::log(p[i]) - std::log(std::max(q[i], 1e-300)));
  }
  return s;
}

Matrix kron_power(const Matrix& m, int k) {
  Matrix out = m;
  for (int i = 1; i < k; ++i) out = kron(out, m);
  return out;
}

OptimizerBudget chain_budget(const OptimizerBudget& budget) {
  OptimizerBudget inner;
  inner.restarts = std::max(2, budget.restarts / 5);
  inner.sweeps = 1;
  inner.max_evals = std::min(budget.max_evals, 80);
  return inner;
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

DeFinettiEnsemble decompose_by_measurement(const SymmetricState& gamma,
                                           const Measurement& e, int k) {
  const int n = gamma.n_parties();
  const int d = gamma.local_dim();
  if (k < 1 || k >= n) throw std::invalid_argument("decompose: need 1 <= k < N");
  int dt = 1;
  for (int i = k; i < n; ++i) dt *= d;
  if (e.dim() != dt) throw std::invalid_argument("measurement dimension mismatch");
  int dk = 1;
  for (int i = 0; i < k; ++i) dk *= d;

  DeFinettiEnsemble ens;
  ens.k = k;
  ens.n_parties = n;
  double total = 0.0;
  for (const auto& el : e.elements()) {
    Matrix c = trailing_contract(gamma.matrix(), dk, el.m);
    const double p = c.trace().real();
    if (p < kPruneWeight) continue;
    c /= p;
    c = (c + Matrix(c.adjoint())) / 2.0;
    Operator kbody(std::vector<int>(k, d), std::move(c));
    Operator one = k == 1 ? kbody : partial_trace(kbody, [&] {
      std::vector<int> t;
      for (int i = 1; i < k; ++i) t.push_back(i);
      return t;
    }());
    ens.weights.push_back(p);
    ens.k_body.push_back(std::move(kbody));
    ens.one_body.push_back(DensityMatrix(one));
    total += p;
  }
  for (double& w : ens.weights) w /= total;
  return ens;
}

DeFinettiEnsemble decompose_by_measurement(const SymmetricState& gamma,
                                           const std::vector<Measurement>& parts,
                                           int k) {
  if (parts.empty()) throw std::invalid_argument("decompose: need at least one part");
  Measurement joint = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) joint = tensor_measurement(joint, parts[i]);
  return decompose_by_measurement(gamma, joint, k);
}

Operator build_tilde(const DeFinettiEnsemble& ens, int k) {
  if (k < 1) throw std::invalid_argument("build_tilde: k >= 1");
  const int d = ens.one_body.at(0).dim();
  int dk = 1;
  for (int i = 0; i < k; ++i) dk *= d;
  Matrix acc = Matrix::Zero(dk, dk);
  for (size_t mu = 0; mu < ens.weights.size(); ++mu)
    acc += ens.weights[mu] * kron_power(ens.one_body[mu].matrix(), k);
  return Operator(std::vector<int>(k, d), std::move(acc));
}

double greedy_chain_term(const SymmetricState& gamma, int k, int j,
                         const Measurement& lambda_j,
                         const std::vector<Measurement>& later) {
  const int n = gamma.n_parties();
  if (j < k || j > n) throw std::invalid_argument("chain term: need k <= j <= N");
  if (static_cast<int>(later.size()) != n - j)
    throw std::invalid_argument("chain term: need one measurement per later slot");

  // Trace out slots k..j-1 (1-based), keeping 1..k-1, j..N.
  std::vector<int> traced;
  for (int i = k - 1; i < j - 1; ++i) traced.push_back(i);
  const Operator red = partial_trace(gamma.state().op(), traced);
  const int target = k - 1;  // slot j in the reduced operator (0-based)

  const int n_later = n - j;
  std::vector<int> idx(n_later, 0);
  double term = 0.0;
  while (true) {
    std::vector<std::pair<int, Matrix>> slots;
    for (int i = 0; i < n_later; ++i)
      slots.push_back({target + 1 + i, later[i].element(idx[i]).m});
    Operator cond = n_later == 0 ? red : partial_contract(red, slots);
    const double p = cond.trace().real();
    if (p > kPruneWeight) {
      Matrix rho = cond.matrix() / p;
      Operator rho_op(cond.factor_dims(), std::move(rho));
      const Operator rho_a = partial_trace(rho_op, {target});
      double holevo = von_neumann_entropy(rho_a);
      for (const auto& el : lambda_j.elements()) {
        Operator rb = partial_contract(rho_op, {{target, el.m}});
        const double q = rb.trace().real();
        if (q <= kPruneWeight) continue;
        rb.matrix() /= q;
        holevo -= q * von_neumann_entropy(rb);
      }
      term += p * holevo;
    }
    if (n_later == 0) break;
    int i = n_later - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < later[i].size()) break;
      idx[i] = 0;
    }
    if (i < 0) break;
  }
  return term;
}

std::vector<Measurement> greedy_measurement_chain(const SymmetricState& gamma, int k,
                                                  const MeasurementFamily& family,
                                                  const OptimizerBudget& budget,
                                                  std::uint64_t seed) {
  const int n = gamma.n_parties();
  if (k < 2 || k > n) throw std::invalid_argument("greedy chain: need 2 <= k <= N");
  RandomStream root(seed);
  std::vector<Measurement> chain;  // filled from slot N downward
  for (int j = n; j >= k; --j) {
    std::vector<Measurement> later(chain.rbegin(), chain.rend());
    auto objective = [&](const std::vector<Measurement>& ms) {
      return greedy_chain_term(gamma, k, j, ms[0], later);
    };
    auto res = optimize_local_measurements(objective, {family}, chain_budget(budget),
                                           root.derive(static_cast<std::uint64_t>(j)).integer());
    chain.push_back(res.best[0]);
  }
  return {chain.rbegin(), chain.rend()};  // slot order k..N
}

namespace {

struct EnsembleSetup {
  DeFinettiEnsemble ens;
  Operator delta;  // Γ^(k) - Γ̃^(k)
};

// Ensemble from measuring the chain suffix that starts `skip` slots after
// slot k; the skipped slots are traced out via trivial measurements. skip = 0
// measures every party k+1..N. The existence argument behind the bounds
// pigeonholes over where the chain stops, so the checks scan stopping points
// and exhibit the first ensemble that satisfies the bound.
EnsembleSetup build_chain_ensemble(const SymmetricState& gamma, int k,
                                   const std::vector<Measurement>& chain, int skip) {
  const int n = gamma.n_parties();
  const int d = gamma.local_dim();
  // ℰ is the product over parties k+1..N; the chain also carries slot k.
  std::vector<Measurement> parts;
  parts.reserve(n - k);
  for (int i = 0; i < n - k; ++i)
    parts.push_back(i < skip ? Measurement::trivial(d) : chain[i + 1]);
  EnsembleSetup setup{decompose_by_measurement(gamma, parts, k),
                      Operator({1}, Matrix::Zero(1, 1))};
  Operator tilde = build_tilde(setup.ens, k);
  Operator gk = reduced(gamma, k);
  setup.delta = Operator(gk.factor_dims(), gk.matrix() - tilde.matrix());
  return setup;
}

}  // namespace

BoundCheckResult check_trace_norm_bound(const SymmetricState& gamma, int k,
                                        const OptimizerBudget& budget,
                                        std::uint64_t seed) {
  const int n = gamma.n_parties();
  const int d = gamma.local_dim();
  if (k < 1 || k >= n) throw std::invalid_argument("check: need 1 <= k < N");
  RandomStream root(seed);

  BoundCheckResult res;
  res.rhs_bound = std::sqrt(2.0 * (k - 1) * (k - 1) * std::log(double(d)) / (n - k + 1));
  if (k == 1) {
    // The bound is vacuous (rhs = 0) and the construction needs k >= 2 for
    // the chain; the single-outcome decomposition gives Γ̃^(1) = Γ^(1).
    auto ens = decompose_by_measurement(gamma, Measurement::trivial(
        static_cast<int>(std::pow(double(d), n - 1) + 0.5)), 1);
    Operator delta(reduced(gamma, 1).factor_dims(),
                   reduced(gamma, 1).matrix() - build_tilde(ens, 1).matrix());
    res.lhs_lower_bound = delta.trace_norm_hermitian();
    res.pass = res.lhs_lower_bound <= res.rhs_bound + 1e-9;
    return res;
  }

  MeasurementFamily family(FamilyKind::ProjectiveUnitary, d);
  const auto chain =
      greedy_measurement_chain(gamma, k, family, budget, root.derive(1).integer());
  std::vector<MeasurementFamily> fams(k, MeasurementFamily(FamilyKind::ProjectiveUnitary, d));
  bool first = true;
  for (int skip = 0; skip <= n - k; ++skip) {
    auto setup = build_chain_ensemble(gamma, k, chain, skip);
    auto objective = [&](const std::vector<Measurement>& ms) {
      return measured_trace_norm(ms, setup.delta);
    };
    auto opt = optimize_local_measurements(objective, fams, budget,
                                           root.derive(2 + skip).integer());
    if (first || opt.value < res.lhs_lower_bound) {
      res.lhs_lower_bound = opt.value;
      res.restarts = opt.restarts;
      res.evaluations = opt.evaluations;
      first = false;
    }
    if (res.lhs_lower_bound <= res.rhs_bound + 1e-9) break;
  }
  res.pass = res.lhs_lower_bound <= res.rhs_bound + 1e-9;
  return res;
}

BoundCheckResult check_info_bound(const SymmetricState& gamma, int k,
                                  const OptimizerBudget& budget, std::uint64_t seed) {
  const int n = gamma.n_parties();
  const int d = gamma.local_dim();
  if (k < 1 || k >= n) throw std::invalid_argument("check: need 1 <= k < N");
  RandomStream root(seed);

  BoundCheckResult res;
  res.rhs_bound = (k - 1) * (k - 1) * std::log(double(d)) / (n - k + 1);
  if (k == 1) {
    res.lhs_lower_bound = 0.0;
    res.pass = true;
    return res;
  }

  MeasurementFamily family(FamilyKind::ProjectiveUnitary, d);
  const auto chain =
      greedy_measurement_chain(gamma, k, family, budget, root.derive(1).integer());
  std::vector<MeasurementFamily> fams(k, MeasurementFamily(FamilyKind::ProjectiveUnitary, d));
  bool first = true;
  for (int skip = 0; skip <= n - k; ++skip) {
    auto setup = build_chain_ensemble(gamma, k, chain, skip);

    auto info_value = [&](const std::vector<Measurement>& ms) {
      double total = 0.0;
      for (size_t mu = 0; mu < setup.ens.weights.size(); ++mu) {
        const auto p = joint_outcome_distribution(ms, setup.ens.k_body[mu]);
        // product distribution of the one-body marginal
        std::vector<double> q{1.0};
        for (int s = 0; s < k; ++s) {
          const auto m = ms[s].outcome_distribution(setup.ens.one_body[mu].matrix());
          std::vector<double> next;
          next.reserve(q.size() * m.size());
          for (double a : q)
            for (double b : m) next.push_back(a * b);
          q = std::move(next);
        }
        total += setup.ens.weights[mu] * kl_clamped(p, q);
      }
      return total;
    };

    auto opt = optimize_local_measurements(info_value, fams, budget,
                                           root.derive(2 + skip).integer());
    if (first || opt.value < res.lhs_lower_bound) {
      res.lhs_lower_bound = opt.value;
      res.restarts = opt.restarts;
      res.evaluations = opt.evaluations;
      // Pinsker bridge at the same measurements.
      res.bridge_info = opt.value;
      res.bridge_trace_norm = measured_trace_norm(opt.best, setup.delta);
      first = false;
    }
    if (res.lhs_lower_bound <= res.rhs_bound + 1e-9) break;
  }
  res.pass = res.lhs_lower_bound <= res.rhs_bound + 1e-9;
  res.bridge_ok =
      res.bridge_trace_norm * res.bridge_trace_norm <= 2.0 * res.bridge_info + 1e-9;
  return res;
}

namespace {

Matrix one_body_change_of_basis(const Operator& p, int* rank_out) {
  const int d = p.dim();
  if ((p.matrix() - p.matrix().adjoint()).cwiseAbs().maxCoeff() > 1e-10 ||
      (p.matrix() * p.matrix() - p.matrix()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("fock localization needs an orthogonal projector");
  Eigen::SelfAdjointEigenSolver<Matrix> es(p.matrix());
  // Columns ordered range(P) first, then range(Q).
  Matrix b(d, d);
  int r = 0;
  for (int i = 0; i < d; ++i)
    if (es.eigenvalues()(i) > 0.5) b.col(r++) = es.eigenvectors().col(i);
  int q = r;
  for (int i = 0; i < d; ++i)
    if (es.eigenvalues()(i) <= 0.5) b.col(q++) = es.eigenvectors().col(i);
  *rank_out = r;
  return b;
}

Vector apply_one_body(const Vector& psi, int n, int d, int slot, const Matrix& m) {
  Vector out = Vector::Zero(psi.size());
  int stride = 1;
  for (int i = slot + 1; i < n; ++i) stride *= d;
  const int block = stride * d;
  for (int base = 0; base < psi.size(); base += block)
    for (int off = 0; off < stride; ++off)
      for (int a = 0; a < d; ++a) {
        Complex s = 0;
        for (int bdig = 0; bdig < d; ++bdig) s += m(a, bdig) * psi(base + bdig * stride + off);
        out(base + a * stride + off) = s;
      }
  return out;
}

}  // namespace

LocalizationSectors fock_localization(const PureState& psi, const Operator& p) {
  const auto& dims = psi.factor_dims();
  const int n = static_cast<int>(dims.size());
  const int d = dims[0];
  for (int x : dims)
    if (x != d) throw std::invalid_argument("fock localization needs identical factors");
  if (p.dim() != d) throw std::invalid_argument("projector dimension mismatch");

  int r = 0;
  const Matrix b = one_body_change_of_basis(p, &r);

  Vector rot = psi.vector();
  for (int s = 0; s < n; ++s) rot = apply_one_body(rot, n, d, s, b.adjoint());

  LocalizationSectors sec;
  sec.rank_p = r;
  sec.weights.assign(n + 1, 0.0);
  sec.sector_states.reserve(n + 1);

  for (int l = 0; l <= n; ++l) {
    // Mask to words with P-modes on the first l slots, Q-modes after.
    Vector masked = Vector::Zero(rot.size());
    std::vector<int> digit(n, 0);
    for (int I = 0; I < rot.size(); ++I) {
      bool match = true;
      for (int s = 0; s < n && match; ++s)
        match = (s < l) ? (digit[s] < r) : (digit[s] >= r);
      if (match) masked(I) = rot(I);
      for (int i = n - 1; i >= 0; --i) {
        if (++digit[i] < d) break;
        digit[i] = 0;
      }
    }
    const double choose = binomial(n, l);
    if (l == 0) {
      sec.weights[0] = masked.squaredNorm();
      sec.sector_states.push_back(Operator({1}, Matrix::Constant(1, 1, 1.0)));
      continue;
    }
    Operator full(std::vector<int>(n, d), Matrix(masked * masked.adjoint()));
    std::vector<int> traced;
    for (int i = l; i < n; ++i) traced.push_back(i);
    Operator g = l == n ? full : partial_trace(full, traced);
    g.matrix() *= choose;
    const double c = g.trace().real();
    sec.weights[l] = c;
    if (c > kPruneWeight) {
      g.matrix() /= c;
      // rotate back to the original basis
      Matrix bl = b;
      for (int i = 1; i < l; ++i) bl = kron(bl, b);
      g = Operator(g.factor_dims(), bl * g.matrix() * bl.adjoint());
    } else {
      g.matrix().setZero();
    }
    sec.sector_states.push_back(std::move(g));
  }
  return sec;
}

double localization_residual(const PureState& psi, const Operator& p,
                             const LocalizationSectors& sectors, int k) {
  const int n = static_cast<int>(psi.factor_dims().size());
  const int d = psi.factor_dims()[0];
  std::vector<int> traced;
  for (int i = k; i < n; ++i) traced.push_back(i);
  Operator gk = partial_trace(Operator(psi.factor_dims(),
                                       Matrix(psi.vector() * psi.vector().adjoint())),
                              traced);
  Matrix pk = p.matrix();
  for (int i = 1; i < k; ++i) pk = kron(pk, p.matrix());
  const Matrix lhs = pk * gk.matrix() * pk;

  int dk = 1;
  for (int i = 0; i < k; ++i) dk *= d;
  Matrix rhs = Matrix::Zero(dk, dk);
  for (int l = k; l <= n; ++l) {
    if (sectors.weights[l] <= kPruneWeight) continue;
    const Operator& g = sectors.sector_states[l];
    std::vector<int> t;
    for (int i = k; i < l; ++i) t.push_back(i);
    const Operator gkl = t.empty() ? g : partial_trace(g, t);
    rhs += sectors.weights[l] * (binomial(l, k) / binomial(n, k)) * gkl.matrix();
  }
  return (lhs - rhs).norm();
}

BoundCheckResult projected_definetti(const PureState& psi, const Operator& p,
                                     const OptimizerBudget& budget, std::uint64_t seed,
                                     int k) {
  if (k != 2) throw std::invalid_argument("projected de Finetti is stated for k = 2");
  const int n = static_cast<int>(psi.factor_dims().size());
  const int d = psi.factor_dims()[0];
  RandomStream root(seed);

  auto sectors = fock_localization(psi, p);
  if (sectors.rank_p < 1) throw std::invalid_argument("dim(P) must be >= 1");

  // Mixture of per-sector de Finetti states with the localization weights.
  Matrix mix = Matrix::Zero(d * d, d * d);
  for (int l = 2; l <= n; ++l) {
    if (sectors.weights[l] <= kPruneWeight) continue;
    const double w = sectors.weights[l] * binomial(l, 2) / binomial(n, 2);
    const Operator& g = sectors.sector_states[l];
    Operator tilde({d, d}, Matrix::Zero(d * d, d * d));
    if (l == 2) {
      const Operator one = partial_trace(g, {1});
      tilde.matrix() = kron(one.matrix(), one.matrix());
    } else {
      SymmetricState sym{DensityMatrix(g)};
      MeasurementFamily family(FamilyKind::ProjectiveUnitary, d);
      auto chain = greedy_measurement_chain(sym, 2, family, budget,
                                            root.derive(100 + l).integer());
      std::vector<Measurement> parts(chain.begin() + 1, chain.end());
      tilde = build_tilde(decompose_by_measurement(sym, parts, 2), 2);
    }
    mix += w * tilde.matrix();
  }

  std::vector<int> traced;
  for (int i = 2; i < n; ++i) traced.push_back(i);
  Operator g2 = partial_trace(Operator(psi.factor_dims(),
                                       Matrix(psi.vector() * psi.vector().adjoint())),
                              traced);
  const Matrix p2 = kron(p.matrix(), p.matrix());
  Operator delta({d, d}, Matrix(p2 * g2.matrix() * p2 - mix));

  // sup over 0 <= A, B <= 1 of |tr[(A ⊗ B) Δ]| via the two-outcome family.
  auto objective = [&](const std::vector<Measurement>& ms) {
    const Matrix e = kron(ms[0].element(0).m, ms[1].element(0).m);
    return std::abs((e.transpose().cwiseProduct(delta.matrix())).sum());
  };
  std::vector<MeasurementFamily> fams(2, MeasurementFamily(FamilyKind::TwoOutcomeOperator, d));
  auto opt = optimize_local_measurements(objective, fams, budget, root.derive(2).integer());

  BoundCheckResult res;
  res.lhs_lower_bound = opt.value;
  res.rhs_bound = std::sqrt(std::log(double(sectors.rank_p)) / n);
  res.restarts = opt.restarts;
  res.evaluations = opt.evaluations;
  res.fitted_c = res.rhs_bound > 0 ? res.lhs_lower_bound / res.rhs_bound : 0.0;
  res.pass = res.lhs_lower_bound <= res.rhs_bound + 1e-9;
  return res;
}

}  // namespace qdf
