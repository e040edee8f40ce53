#pragma once

#include <cstdint>
#include <vector>

#include "qdf/measurement.hpp"
#include "qdf/operator.hpp"
#include "qdf/optimize.hpp"

namespace qdf {

/// Convex ensemble of one-body states extracted from a symmetric state by
/// measuring the last N-k parties.
struct DeFinettiEnsemble {
  std::vector<double> weights;           // p_mu, pruned below 1e-14 and renormalized
  std::vector<DensityMatrix> one_body;   // Gamma_mu^(1)
  std::vector<Operator> k_body;          // cached Gamma_mu^(k)
  int k = 0;
  int n_parties = 0;
};

/// Sector weights and states of an N-body pure state split by the number
/// of particles inside range(P).
struct LocalizationSectors {
  std::vector<double> weights;        // c_{N,l}, l = 0..N
  std::vector<Operator> sector_states;  // l-party states in the original basis,
                                        // supported in range(P); entry 0 is scalar
  int rank_p = 0;
};

struct BoundCheckResult {
  double lhs_lower_bound = 0.0;
  double rhs_bound = 0.0;
  bool pass = false;
  int restarts = 0;
  long evaluations = 0;
  // Pinsker bridge bookkeeping (filled by check_info_bound): measured
  // trace norm and relative-entropy sum evaluated at the same measurements.
  double bridge_trace_norm = 0.0;
  double bridge_info = 0.0;
  bool bridge_ok = true;
  double fitted_c = 0.0;  // projected_definetti only
};

/// p_mu = tr[(1^k ⊗ M_mu) Γ], Γ_mu^(k) = tr_{k+1..N}[(1 ⊗ M_mu) Γ]/p_mu.
/// The measurement acts jointly on parties k+1..N.
DeFinettiEnsemble decompose_by_measurement(const SymmetricState& gamma,
                                           const Measurement& e, int k);

/// Convenience overload: product of single-party measurements on parties
/// k+1..N (in order).
DeFinettiEnsemble decompose_by_measurement(const SymmetricState& gamma,
                                           const std::vector<Measurement>& parts,
                                           int k);

/// k-party reduction of sum_mu p_mu (Γ_mu^(1))^{⊗N}.
Operator build_tilde(const DeFinettiEnsemble& ens, int k);

/// Greedy conditional-information chain: measurements for slots k..N
/// (1-based), chosen from slot N downward, each maximizing its conditional
/// term given the later choices. Returned in slot order k..N.
std::vector<Measurement> greedy_measurement_chain(const SymmetricState& gamma, int k,
                                                  const MeasurementFamily& family,
                                                  const OptimizerBudget& budget,
                                                  std::uint64_t seed);

/// Conditional term I(H_1..H_{k-1} : H_j | H_{j+1}..H_N) of the measured
/// state, with slots j..N measured and slots k..j-1 traced out (1-based j).
double greedy_chain_term(const SymmetricState& gamma, int k, int j,
                         const Measurement& lambda_j,
                         const std::vector<Measurement>& later);

/// Trace-norm form of the de Finetti bound: lower-bounds the measured sup
/// against rhs = sqrt(2 (k-1)^2 ln d / (N-k+1)).
BoundCheckResult check_trace_norm_bound(const SymmetricState& gamma, int k,
                                        const OptimizerBudget& budget,
                                        std::uint64_t seed);

/// Information form: lower-bounds sup_L sum_mu p_mu H(L Γ_mu^(k), L (Γ_mu^(1))^k)
/// against rhs = (k-1)^2 ln d / (N-k+1); also verifies the Pinsker bridge
/// trace^2 <= 2 info at the optimal measurements.
BoundCheckResult check_info_bound(const SymmetricState& gamma, int k,
                                  const OptimizerBudget& budget, std::uint64_t seed);

/// Occupation split of a pure state by a one-body orthogonal projector.
LocalizationSectors fock_localization(const PureState& psi, const Operator& p);

/// Residual of the reconstruction identity
/// P^k γ^(k) P^k = sum_l c_l C(N,k)^{-1} C(l,k) (Γ_l)^(k).
double localization_residual(const PureState& psi, const Operator& p,
                             const LocalizationSectors& sectors, int k);

/// Per-sector de Finetti ensembles mixed with the localization weights;
/// lhs = sup_{0<=A,B<=1} |tr[(A⊗B) Δ]|, reference curve sqrt(ln(dim P)/N).
BoundCheckResult projected_definetti(const PureState& psi, const Operator& p,
                                     const OptimizerBudget& budget, std::uint64_t seed,
                                     int k = 2);

double binomial(int n, int k);

}  // namespace qdf
