#pragma once

#include <vector>

#include "qdf/gpe.hpp"
#include "qdf/lattice.hpp"
#include "qdf/nbody.hpp"

namespace qdf {

struct SweepRow {
  int n = 0;
  double e_per_particle = 0.0;
  double e_hartree = 0.0;     // Hartree minimum over pure states
  double e_nls = 0.0;         // NLS minimum with a_eff = integral of w
  double condensate_fraction = 0.0;
  double trace_dist_rdm1 = 0.0;  // (1/2)||rdm1 - |u_nls><u_nls|||_1
  double interaction_integral = 0.0;
  bool upper_bound_ok = false;   // E(N)/N <= E^H + 1e-9
  bool energy_identity_ok = false;  // <H>/N = (1/2) tr(H_2 rdm2) within 1e-8
  bool rdm_consistent = false;      // tr_2 rdm2 = rdm1 within 1e-9
};

/// Ground-state sweep of the model over N = n_min..n_max, rebuilding the
/// scaled interaction per N and comparing against the Hartree and NLS
/// minima. No convergence is asserted; contract flags are per row.
std::vector<SweepRow> convergence_sweep(LatticeModel model, int n_min, int n_max,
                                        double tol = 1e-9);

struct H2GapReport {
  double epsilon = 0.0;
  double min_eigenvalue = 0.0;  // at the requested cutoff
  double cutoff = 0.0;
  // scan over Lambda = C eps^-1 N^{d beta}: (C, min eigenvalue) pairs
  std::vector<std::pair<int, double>> scan;
  int smallest_passing_c = -1;  // min eigenvalue >= -1e-9
};

/// Min eigenvalue of H_2 - P^2 H_2^eps P^2 - (Lambda/2)(Q x 1 + 1 x Q) with
/// P = 1_{h <= cutoff}, H_2^eps = H_2 - eps |W|, plus the scan over the
/// prefactor C in Lambda = C eps^-1 N^{d beta} (C in {1, 2, 4, ...}).
H2GapReport localized_h2_gap(const LatticeModel& model, double epsilon, double cutoff,
                             int max_scan_c = 64);

}  // namespace qdf
