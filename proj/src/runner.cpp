#include "qdf/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdf/definetti.hpp"
#include "qdf/information.hpp"
#include "qdf/sweep.hpp"

namespace qdf {

using nlohmann::json;

void reject_unknown_keys(const json& config, const std::vector<std::string>& allowed,
                         const std::string& context) {
  if (!config.is_object()) throw ConfigError(context + ": expected an object");
  for (auto it = config.begin(); it != config.end(); ++it) {
    bool known = false;
    for (const auto& k : allowed) known = known || it.key() == k;
    if (!known) throw ConfigError(context + ": unknown key '" + it.key() + "'");
  }
}

namespace {

template <typename T>
T get_or(const json& config, const std::string& key, T fallback) {
  if (!config.contains(key)) return fallback;
  try {
    return config.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("key '" + key + "' has the wrong type");
  }
}

void add_record(RunReport& rep, json record) {
  const bool pass = record.at("pass").get<bool>();
  (pass ? rep.checks_passed : rep.checks_failed)++;
  rep.records.push_back(std::move(record));
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const auto& c : cells) {
    if (!row.empty()) row += ",";
    row += c;
  }
  return row + "\n";
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

LatticeModel model_from_config(const json& m) {
  reject_unknown_keys(m, {"space_dim", "L", "h_x", "boundary", "beta", "N",
                          "potential", "interaction"},
                      "model");
  LatticeModel model;
  model.space_dim = get_or(m, "space_dim", 1);
  model.sites_per_axis = get_or(m, "L", 12);
  model.h_x = get_or(m, "h_x", 0.5);
  model.beta = get_or(m, "beta", 0.0);
  model.n_particles = get_or(m, "N", 2);
  const std::string boundary = get_or<std::string>(m, "boundary", "dirichlet");
  if (boundary == "dirichlet") model.boundary = Boundary::Dirichlet;
  else if (boundary == "periodic") model.boundary = Boundary::Periodic;
  else throw ConfigError("boundary must be 'dirichlet' or 'periodic'");

  if (m.contains("potential")) {
    const json& p = m.at("potential");
    reject_unknown_keys(p, {"type", "coeff"}, "potential");
    const std::string type = get_or<std::string>(p, "type", "zero");
    if (type == "harmonic") model.potential = harmonic_potential(get_or(p, "coeff", 1.0));
    else if (type != "zero") throw ConfigError("potential type must be harmonic|zero");
  }
  if (m.contains("interaction")) {
    const json& w = m.at("interaction");
    reject_unknown_keys(w, {"type", "amplitude", "width"}, "interaction");
    const std::string type = get_or<std::string>(w, "type", "zero");
    const double amp = get_or(w, "amplitude", 1.0);
    const double width = get_or(w, "width", 1.0);
    if (type == "gaussian") model.interaction = gaussian_interaction(amp, width);
    else if (type == "top_hat") model.interaction = top_hat_interaction(amp, width);
    else if (type != "zero") throw ConfigError("interaction type must be gaussian|top_hat|zero");
  }
  return model;
}

OptimizerBudget budget_from_config(const json& config) {
  OptimizerBudget b;
  b.restarts = get_or(config, "restarts", b.restarts);
  b.sweeps = get_or(config, "sweeps", b.sweeps);
  b.max_evals = get_or(config, "max_evals", b.max_evals);
  const double mult = get_or(config, "budget", 1.0);
  if (mult <= 0.0) throw ConfigError("budget multiplier must be positive");
  b.restarts = std::max(1, static_cast<int>(b.restarts * mult + 0.5));
  b.max_evals = std::max(10, static_cast<int>(b.max_evals * mult + 0.5));
  return b;
}

}  // namespace

RunReport cmd_verify_info(const json& config) {
  reject_unknown_keys(config, {"seed", "samples", "dims", "measurement_pairs"},
                      "verify-info");
  const std::uint64_t seed = get_or<std::uint64_t>(config, "seed", 1);
  const int samples = get_or(config, "samples", 500);
  const std::vector<int> dims = get_or<std::vector<int>>(config, "dims", {2, 2, 2});
  const int pairs = get_or(config, "measurement_pairs", 100);
  if (dims.size() != 3) throw ConfigError("dims must list three factors");

  RunReport rep;
  rep.config_echo = config;
  rep.csv = csv_row({"seed", "quantity", "value", "bound", "pass"});
  RandomStream root(seed);

  auto push = [&](long s, const std::string& quantity, double value, double bound,
                  bool pass) {
    add_record(rep, json{{"seed_index", s},
                         {"quantity", quantity},
                         {"value", value},
                         {"bound", bound},
                         {"pass", pass}});
    rep.csv += csv_row({std::to_string(s), quantity, num(value), num(bound),
                        pass ? "1" : "0"});
  };

  for (int s = 0; s < samples; ++s) {
    RandomStream rng = root.derive(static_cast<std::uint64_t>(s));
    const DensityMatrix g = random_mixed_hs(dims, rng);
    const DensityMatrix gp = random_mixed_hs(dims, rng);

    const double cmi = conditional_mutual_information(g.op(), {0}, {1}, {2});
    push(s, "ssa_cmi", cmi, -1e-9, cmi >= -1e-9);

    const double s_abc = von_neumann_entropy(g);
    const double s_ab = von_neumann_entropy(partial_trace(g.op(), {2}));
    const double s_c = von_neumann_entropy(partial_trace(g.op(), {0, 1}));
    const double al = s_abc - std::abs(s_ab - s_c);
    push(s, "araki_lieb", al, -1e-9, al >= -1e-9);

    const double chain = chain_rule_check(g.op(), 2);
    push(s, "chain_rule_residual", chain, 1e-9, chain <= 1e-9);

    const double gap = pinsker_gap(g, gp);
    push(s, "pinsker_gap", gap, -1e-9, gap >= -1e-9);
  }

  const int full_dim = dims[0] * dims[1] * dims[2];
  MeasurementFamily family(FamilyKind::ProjectiveUnitary, full_dim);
  for (int s = 0; s < pairs; ++s) {
    RandomStream rng = root.derive(0x10000ULL + s);
    const DensityMatrix g = random_mixed_hs(dims, rng);
    const DensityMatrix gp = random_mixed_hs(dims, rng);
    Eigen::VectorXd params(family.param_count());
    for (int i = 0; i < params.size(); ++i) params(i) = rng.gaussian();
    const Measurement lambda = family.realize(params);
    const double before = relative_entropy(g, gp).value;
    const double after =
        classical_kl(lambda.outcome_distribution(g.matrix()),
                     lambda.outcome_distribution(gp.matrix()))
            .value;
    push(s, "data_processing", before - after, -1e-9, after <= before + 1e-9);
  }

  if (rep.checks_failed > 0) rep.exit_code = kCheckFailure;
  return rep;
}

namespace {

PureState ghz_state(int d, int n) {
  int dim = 1;
  for (int i = 0; i < n; ++i) dim *= d;
  Vector v = Vector::Zero(dim);
  for (int b = 0; b < d; ++b) {
    int flat = 0;
    for (int i = 0; i < n; ++i) flat = flat * d + b;
    v(flat) = 1.0 / std::sqrt(double(d));
  }
  return PureState(std::vector<int>(n, d), std::move(v));
}

}  // namespace

RunReport cmd_verify_definetti(const json& config) {
  reject_unknown_keys(config,
                      {"seed", "preset", "d", "n_list", "k", "states_per_n", "restarts",
                       "sweeps", "max_evals", "budget"},
                      "verify-definetti");
  const std::uint64_t seed = get_or<std::uint64_t>(config, "seed", 1);
  const std::string preset = get_or<std::string>(config, "preset", "sweep");
  const int d = get_or(config, "d", 2);
  const std::vector<int> n_list = get_or<std::vector<int>>(config, "n_list", {4, 5, 6});
  const int k = get_or(config, "k", 2);
  const int states_per_n = get_or(config, "states_per_n", 50);
  const OptimizerBudget budget = budget_from_config(config);

  RunReport rep;
  rep.config_echo = config;
  rep.csv = csv_row({"n", "k", "state", "check", "lhs", "rhs", "pass"});
  RandomStream root(seed);

  auto run_state = [&](const SymmetricState& sym, int n, int state_index,
                       std::uint64_t state_seed) {
    const auto tn = check_trace_norm_bound(sym, k, budget, state_seed);
    const auto info = check_info_bound(sym, k, budget, state_seed ^ 0x5a5a5a5aULL);
    add_record(rep, json{{"preset", preset}, {"n", n}, {"k", k},
                         {"state", state_index}, {"check", "trace_norm"},
                         {"lhs", tn.lhs_lower_bound}, {"rhs", tn.rhs_bound},
                         {"pass", tn.pass}});
    add_record(rep, json{{"preset", preset}, {"n", n}, {"k", k},
                         {"state", state_index}, {"check", "info"},
                         {"lhs", info.lhs_lower_bound}, {"rhs", info.rhs_bound},
                         {"bridge_trace_norm", info.bridge_trace_norm},
                         {"bridge_ok", info.bridge_ok},
                         {"pass", info.pass && info.bridge_ok}});
    rep.csv += csv_row({std::to_string(n), std::to_string(k),
                        std::to_string(state_index), "trace_norm",
                        num(tn.lhs_lower_bound), num(tn.rhs_bound), tn.pass ? "1" : "0"});
    rep.csv += csv_row({std::to_string(n), std::to_string(k),
                        std::to_string(state_index), "info", num(info.lhs_lower_bound),
                        num(info.rhs_bound), info.pass && info.bridge_ok ? "1" : "0"});
  };

  for (size_t ni = 0; ni < n_list.size(); ++ni) {
    const int n = n_list[ni];
    if (k < 1 || k >= n) throw ConfigError("need 1 <= k < n for every n");
    if (preset == "sweep") {
      for (int s = 0; s < states_per_n; ++s) {
        RandomStream rng = root.derive(ni * 1000 + s);
        const PureState psi = random_symmetric_pure(d, n, rng);
        run_state(SymmetricState(psi.projector()), n, s, rng.integer());
      }
    } else if (preset == "ghz") {
      const SymmetricState sym(ghz_state(d, n).projector());
      run_state(sym, n, 0, root.derive(ni).integer());
      // hand-checkable ensemble under the computational measurement
      std::vector<Measurement> parts(n - k, Measurement::computational(d));
      const auto ens = decompose_by_measurement(sym, parts, k);
      add_record(rep, json{{"preset", preset}, {"n", n}, {"k", k},
                           {"check", "ghz_ensemble_weights"},
                           {"weights", ens.weights},
                           {"pass", ens.weights.size() == static_cast<size_t>(d)}});
    } else if (preset == "product") {
      RandomStream rng = root.derive(ni);
      const DensityMatrix one = random_pure_haar({d}, rng);
      Matrix m = one.matrix();
      for (int i = 1; i < n; ++i) m = kron(m, one.matrix());
      const SymmetricState sym(DensityMatrix(std::vector<int>(n, d), std::move(m)));
      run_state(sym, n, 0, rng.integer());
    } else {
      throw ConfigError("preset must be sweep|ghz|product");
    }
  }

  if (rep.checks_failed > 0) rep.exit_code = kCheckFailure;
  return rep;
}

RunReport cmd_meanfield(const json& config) {
  reject_unknown_keys(config,
                      {"seed", "preset", "model", "n_min", "n_max", "epsilon", "cutoff",
                       "tol"},
                      "meanfield");
  const std::string preset = get_or<std::string>(config, "preset", "convergence");
  const LatticeModel model =
      model_from_config(config.contains("model") ? config.at("model") : json::object());

  RunReport rep;
  rep.config_echo = config;

  if (preset == "convergence") {
    const int n_min = get_or(config, "n_min", 2);
    const int n_max = get_or(config, "n_max", 6);
    const double tol = get_or(config, "tol", 1e-9);
    const auto rows = convergence_sweep(model, n_min, n_max, tol);
    rep.csv = csv_row({"N", "E_per_particle", "E_hartree", "E_nls",
                       "condensate_fraction", "trace_dist_rdm1", "upper_bound_ok",
                       "energy_identity_ok", "rdm_consistent"});
    for (const auto& r : rows) {
      const bool pass = r.upper_bound_ok && r.energy_identity_ok && r.rdm_consistent;
      add_record(rep, json{{"n", r.n}, {"e_per_particle", r.e_per_particle},
                           {"e_hartree", r.e_hartree}, {"e_nls", r.e_nls},
                           {"condensate_fraction", r.condensate_fraction},
                           {"trace_dist_rdm1", r.trace_dist_rdm1},
                           {"upper_bound_ok", r.upper_bound_ok},
                           {"energy_identity_ok", r.energy_identity_ok},
                           {"rdm_consistent", r.rdm_consistent}, {"pass", pass}});
      rep.csv += csv_row({std::to_string(r.n), num(r.e_per_particle), num(r.e_hartree),
                          num(r.e_nls), num(r.condensate_fraction),
                          num(r.trace_dist_rdm1), r.upper_bound_ok ? "1" : "0",
                          r.energy_identity_ok ? "1" : "0",
                          r.rdm_consistent ? "1" : "0"});
    }
  } else if (preset == "h2gap") {
    const double epsilon = get_or(config, "epsilon", 0.5);
    const double cutoff = get_or(config, "cutoff", 10.0);
    const auto gap = localized_h2_gap(model, epsilon, cutoff);
    rep.csv = csv_row({"C", "min_eigenvalue", "pass"});
    for (const auto& [c, eig] : gap.scan)
      rep.csv += csv_row({std::to_string(c), num(eig), eig >= -1e-9 ? "1" : "0"});
    add_record(rep, json{{"preset", preset}, {"epsilon", epsilon}, {"cutoff", cutoff},
                         {"min_eigenvalue_at_cutoff", gap.min_eigenvalue},
                         {"smallest_passing_c", gap.smallest_passing_c},
                         {"pass", gap.smallest_passing_c > 0}});
  } else if (preset == "fourier") {
    const ScaledInteraction wmat = scaled_interaction(model);
    const auto terms = fourier_pair_decomposition(wmat, model);
    const Eigen::MatrixXd rebuilt = fourier_reconstruction(terms);
    const int l = model.n_sites();
    double residual = 0.0;
    for (int p = 0; p < l; ++p)
      for (int q = 0; q < l; ++q)
        residual = std::max(residual, std::abs(rebuilt(p * l + q, p * l + q) -
                                               wmat.w(p, q)));
    double max_norm = 0.0;
    for (const auto& t : terms)
      for (const auto* f : {&t.c_plus, &t.c_minus, &t.s_plus, &t.s_minus})
        max_norm = std::max(max_norm, f->diagonal().cwiseAbs().maxCoeff());
    rep.csv = csv_row({"momentum", "weight"});
    for (const auto& t : terms) rep.csv += csv_row({num(t.momentum), num(t.weight)});
    add_record(rep, json{{"preset", preset}, {"residual", residual},
                         {"max_factor_norm", max_norm},
                         {"l1_weight", fourier_l1_weight(terms)},
                         {"pass", residual <= 1e-10 && max_norm <= 1.0 + 1e-12}});
  } else {
    throw ConfigError("preset must be convergence|h2gap|fourier");
  }

  if (rep.checks_failed > 0) rep.exit_code = kCheckFailure;
  return rep;
}

RunReport run_command(const std::string& name, const json& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  try {
    if (name == "verify-info") rep = cmd_verify_info(config);
    else if (name == "verify-definetti") rep = cmd_verify_definetti(config);
    else if (name == "meanfield") rep = cmd_meanfield(config);
    else throw ConfigError("unknown command '" + name + "'");
  } catch (const ConfigError& e) {
    rep.exit_code = kConfigError;
    rep.error = e.what();
  } catch (const std::invalid_argument& e) {
    rep.exit_code = kConfigError;
    rep.error = e.what();
  } catch (const std::runtime_error& e) {
    rep.exit_code = kNonConvergence;
    rep.error = e.what();
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

void write_report(const RunReport& report, const std::string& out_dir,
                  const std::string& name) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  json summary{{"version", report.version}, {"config", report.config_echo},
               {"checks_passed", report.checks_passed},
               {"checks_failed", report.checks_failed},
               {"wall_seconds", report.wall_seconds}, {"exit_code", report.exit_code}};
  if (!report.error.empty()) summary["error"] = report.error;
  std::ofstream(fs::path(out_dir) / (name + ".report.json")) << summary.dump(2) << "\n";

  std::ofstream jsonl(fs::path(out_dir) / (name + ".records.jsonl"));
  for (const auto& r : report.records) jsonl << r.dump() << "\n";

  if (!report.csv.empty())
    std::ofstream(fs::path(out_dir) / (name + ".csv")) << report.csv;
}

}  // namespace qdf
