#pragma once

#include <vector>

#include "qdf/measurement.hpp"
#include "qdf/operator.hpp"

namespace qdf {

struct EntropyReport {
  double value = 0.0;  // nats; +inf sentinel when support fails
  bool support_ok = true;
  double eigenvalue_floor_used = 1e-12;
};

/// S(rho) = -sum lambda ln lambda over eigenvalues, zeros skipped.
double von_neumann_entropy(const Operator& rho);
inline double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.op());
}

/// H(g, gp) = tr[g (log g - log gp)]. Finite iff supp(g) ⊆ supp(gp):
/// weight above 1e-10 on eigenvectors of gp with eigenvalue below the
/// 1e-12 floor triggers the +inf path.
EntropyReport relative_entropy(const Operator& g, const Operator& gp);
inline EntropyReport relative_entropy(const DensityMatrix& g, const DensityMatrix& gp) {
  return relative_entropy(g.op(), gp.op());
}

/// Classical Kullback-Leibler divergence with the same support rule.
EntropyReport classical_kl(const std::vector<double>& p, const std::vector<double>& q);

double classical_entropy(const std::vector<double>& p);

/// I(left : rest) = S(Γ^L) + S(Γ^R) - S(Γ) for a bipartition given by the
/// factor indices of the left group.
double mutual_information(const Operator& g, const std::vector<int>& left_group);

/// I(1 : ... : k) = sum_j S(Γ^j) - S(Γ).
double multipartite_mutual_information(const Operator& g);

/// I(A : B | C) = S(AC) + S(BC) - S(ABC) - S(C) over three factor groups.
double conditional_mutual_information(const Operator& g,
                                      const std::vector<int>& group_a,
                                      const std::vector<int>& group_b,
                                      const std::vector<int>& group_c);

/// |I(1..k-1 : k..N) - sum_{j=k}^N I(1..k-1 : j | j+1..N)|, evaluated on
/// the appropriate reduced states. Contract: <= 1e-9 for all states.
double chain_rule_check(const Operator& g, int k);

/// 2 H(Λ(g), Λ(gp)) - ||Λ(g) - Λ(gp)||_1^2 for per-factor measurements;
/// computational measurements are used when lambdas is empty. Infinite
/// relative entropy yields +inf (bound trivially satisfied).
double pinsker_gap(const DensityMatrix& g, const DensityMatrix& gp,
                   const std::vector<Measurement>& lambdas = {});

}  // namespace qdf
