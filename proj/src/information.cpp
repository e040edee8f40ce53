#include "qdf/information.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qdf {

namespace {
constexpr double kFloor = 1e-12;
constexpr double kSupportWeight = 1e-10;
const double kInf = std::numeric_limits<double>::infinity();

bool is_diagonal(const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > 1e-13) return false;
  return true;
}

std::vector<double> diagonal_of(const Matrix& m) {
  std::vector<double> d(m.rows());
  for (int i = 0; i < m.rows(); ++i) d[i] = m(i, i).real();
  return d;
}
}  // namespace

double classical_entropy(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

EntropyReport classical_kl(const std::vector<double>& p, const std::vector<double>& q) {
  EntropyReport rep;
  rep.eigenvalue_floor_used = kFloor;
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= kSupportWeight) continue;
    if (q[i] < kFloor) {
      rep.support_ok = false;
      rep.value = kInf;
      return rep;
    }
    s += p[i] * (std::log(p[i]) - std::log(q[i]));
  }
  rep.value = s;
  return rep;
}

double von_neumann_entropy(const Operator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

EntropyReport relative_entropy(const Operator& g, const Operator& gp) {
  if (g.dim() != gp.dim()) throw std::invalid_argument("relative entropy needs equal dims");
  EntropyReport rep;
  rep.eigenvalue_floor_used = kFloor;

  // Measured / classical states are diagonal; handle them exactly.
  if (is_diagonal(g.matrix()) && is_diagonal(gp.matrix()))
    return classical_kl(diagonal_of(g.matrix()), diagonal_of(gp.matrix()));

  Eigen::SelfAdjointEigenSolver<Matrix> eg(g.matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> ep(gp.matrix());

  double tr_g_log_g = 0.0;
  for (int i = 0; i < eg.eigenvalues().size(); ++i) {
    const double l = eg.eigenvalues()(i);
    if (l > 0.0) tr_g_log_g += l * std::log(l);
  }
  double tr_g_log_gp = 0.0;
  for (int j = 0; j < ep.eigenvalues().size(); ++j) {
    const double s = ep.eigenvalues()(j);
    const double w =
        (ep.eigenvectors().col(j).adjoint() * g.matrix() * ep.eigenvectors().col(j))(0, 0)
            .real();
    if (s < kFloor) {
      if (w > kSupportWeight) {
        rep.support_ok = false;
        rep.value = kInf;
        return rep;
      }
      continue;
    }
    tr_g_log_gp += w * std::log(s);
  }
  rep.value = tr_g_log_g - tr_g_log_gp;
  return rep;
}

namespace {
std::vector<int> complement(const Operator& g, const std::vector<int>& group) {
  std::vector<bool> in(g.num_factors(), false);
  for (int i : group) in[i] = true;
  std::vector<int> out;
  for (int i = 0; i < g.num_factors(); ++i)
    if (!in[i]) out.push_back(i);
  return out;
}
}  // namespace

double mutual_information(const Operator& g, const std::vector<int>& left_group) {
  if (left_group.empty() || static_cast<int>(left_group.size()) >= g.num_factors())
    throw std::invalid_argument("mutual information needs a proper bipartition");
  const auto right_group = complement(g, left_group);
  const double sl = von_neumann_entropy(partial_trace(g, right_group));
  const double sr = von_neumann_entropy(partial_trace(g, left_group));
  return sl + sr - von_neumann_entropy(g);
}

double multipartite_mutual_information(const Operator& g) {
  const int m = g.num_factors();
  if (m < 2) throw std::invalid_argument("need at least two factors");
  double s = -von_neumann_entropy(g);
  for (int j = 0; j < m; ++j) {
    std::vector<int> traced;
    for (int i = 0; i < m; ++i)
      if (i != j) traced.push_back(i);
    s += von_neumann_entropy(partial_trace(g, traced));
  }
  return s;
}

double conditional_mutual_information(const Operator& g,
                                      const std::vector<int>& group_a,
                                      const std::vector<int>& group_b,
                                      const std::vector<int>& group_c) {
  if (group_a.empty() || group_b.empty())
    throw std::invalid_argument("conditional mutual information needs non-empty A, B");
  // S(AC) + S(BC) - S(ABC) - S(C); an empty C degrades to plain MI.
  auto entropy_of_groups = [&](std::vector<int> keep) {
    if (keep.empty()) return 0.0;
    return von_neumann_entropy(partial_trace(g, complement(g, keep)));
  };
  std::vector<int> ac = group_a, bc = group_b, abc = group_a;
  ac.insert(ac.end(), group_c.begin(), group_c.end());
  bc.insert(bc.end(), group_c.begin(), group_c.end());
  abc.insert(abc.end(), group_b.begin(), group_b.end());
  abc.insert(abc.end(), group_c.begin(), group_c.end());
  return entropy_of_groups(ac) + entropy_of_groups(bc) - entropy_of_groups(abc) -
         entropy_of_groups(group_c);
}

double chain_rule_check(const Operator& g, int k) {
  const int n = g.num_factors();
  if (k < 2 || k > n) throw std::invalid_argument("chain rule needs 2 <= k <= N");
  std::vector<int> head;  // factors 1..k-1 (0-based: 0..k-2)
  for (int i = 0; i < k - 1; ++i) head.push_back(i);
  const double lhs = mutual_information(g, head);

  double rhs = 0.0;
  for (int j = k; j <= n; ++j) {
    // reduced state on factors 1..k-1, j..N
    std::vector<int> traced;
    for (int i = k - 1; i < j - 1; ++i) traced.push_back(i);
    const Operator red = partial_trace(g, traced);
    // in the reduced state: A = first k-1 factors, B = factor j, C = rest
    std::vector<int> b{k - 1};
    std::vector<int> c;
    for (int i = k; i < red.num_factors(); ++i) c.push_back(i);
    rhs += conditional_mutual_information(red, head, b, c);
  }
  return std::abs(lhs - rhs);
}

double pinsker_gap(const DensityMatrix& g, const DensityMatrix& gp,
                   const std::vector<Measurement>& lambdas) {
  if (g.dim() != gp.dim()) throw std::invalid_argument("pinsker gap needs equal dims");
  std::vector<Measurement> ls = lambdas;
  if (ls.empty())
    for (int d : g.factor_dims()) ls.push_back(Measurement::computational(d));
  const auto p = joint_outcome_distribution(ls, g.op());
  const auto q = joint_outcome_distribution(ls, gp.op());
  const auto kl = classical_kl(p, q);
  if (!kl.support_ok) return kInf;
  double l1 = 0.0;
  for (size_t i = 0; i < p.size(); ++i) l1 += std::abs(p[i] - q[i]);
  return 2.0 * kl.value - l1 * l1;
}

}  // namespace qdf
