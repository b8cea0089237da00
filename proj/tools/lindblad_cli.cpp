// lindblad-ode: JSON front end for the lindblad library.
//
// Every command writes one JSON document (stdout or --out). Diagnostics go to
// stderr. Exit codes: 0 success, 1 error, 3 negative verdict (check-cp: not
// completely positive; verify / roundtrip: check failed).

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lindblad/json_io.hpp"
#include "lindblad/lindblad.hpp"

namespace {

using lindblad::CMatrix;
using lindblad::RMatrix;
using lindblad::RVector;
using nlohmann::json;
namespace io = lindblad::io;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 3;
constexpr const char* kVersion = "1.0.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<int> dim;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> in;
  std::optional<std::int64_t> samples;
  std::optional<std::string> ensemble;
  std::optional<int> J;
  std::optional<int> threads;
};

const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys = {"dim", "tol", "seed", "out", "in",
                                             "samples", "ensemble", "J", "threads"};
  return keys;
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

template <class T>
void fill_from(std::optional<T>& slot, const json& cfg, const char* key) {
  if (slot || !cfg.contains(key)) return;
  try {
    slot = cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

// Config values fill only what the command line left unset.
void merge_config(Options& o, const std::string& path) {
  const json cfg = read_json_file(path);
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& item : cfg.items())
    if (!config_keys().count(item.key())) throw UsageError("unknown config key '" + item.key() + "'");
  fill_from(o.dim, cfg, "dim");
  fill_from(o.tol, cfg, "tol");
  fill_from(o.seed, cfg, "seed");
  fill_from(o.out, cfg, "out");
  fill_from(o.in, cfg, "in");
  fill_from(o.samples, cfg, "samples");
  fill_from(o.ensemble, cfg, "ensemble");
  fill_from(o.J, cfg, "J");
  fill_from(o.threads, cfg, "threads");
}

json input_document(const Options& o) {
  if (!o.in) throw UsageError("--in is required");
  const json doc = read_json_file(*o.in);
  if (!doc.is_object()) throw UsageError("input must be a JSON object");
  return doc;
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) throw UsageError(std::string("input is missing '") + key + "'");
  return doc.at(key);
}

// d from a d x d operator, a J x J matrix or a length-J vector; --dim must agree.
int resolve_dim(const Options& o, std::optional<int> inferred) {
  if (o.dim && inferred && *o.dim != *inferred)
    throw UsageError("--dim " + std::to_string(*o.dim) + " does not match the input dimension " +
                     std::to_string(*inferred));
  if (inferred) return *inferred;
  if (o.dim) return *o.dim;
  throw UsageError("--dim is required");
}

std::optional<int> dim_from_j(Eigen::Index J) {
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(J) + 1.0)));
  if (d * d != J + 1) throw UsageError("size " + std::to_string(J) + " is not d^2 - 1");
  return d;
}

lindblad::NiceBasis basis_for(int d) {
  if (d < 1) throw UsageError("--dim must be >= 1");
  return lindblad::generate_gell_mann(d);
}

lindblad::OdePair read_pair(const json& doc, int J) {
  lindblad::OdePair p;
  p.G = io::to_real_matrix(field(doc, "G"), "G");
  const json& c = doc.contains("c") ? doc.at("c") : json();
  p.c = (c.is_null() || (c.is_array() && c.empty())) ? RVector(RVector::Zero(J)) : io::to_real_vector(c, "c");
  p.validate(J);
  return p;
}

json diagonal_form_json(const lindblad::DiagonalDissipator& dd) {
  json ops = json::array();
  for (const auto& l : dd.lindblad_ops) ops.push_back(io::from_complex_matrix(l));
  return {{"gamma", io::from_real_vector(dd.gamma)}, {"lindblad_ops", ops}};
}

struct Outcome {
  json result;
  int code = kExitOk;
  json notes = json::object();
};

Outcome cmd_basis(const Options& o) {
  const lindblad::NiceBasis b = basis_for(resolve_dim(o, std::nullopt));
  const auto f = lindblad::structure_constants(b);
  json elements = json::array();
  for (const auto& e : b.elements()) elements.push_back(io::from_complex_matrix(e));
  json fj = json::array();
  for (int i = 0; i < f.num_traceless(); ++i) {
    json plane = json::array();
    for (int j = 0; j < f.num_traceless(); ++j) {
      json row = json::array();
      for (int k = 0; k < f.num_traceless(); ++k) row.push_back(f(i, j, k));
      plane.push_back(row);
    }
    fj.push_back(plane);
  }
  return {{{"dim", b.dim()}, {"elements", elements}, {"structure_constants", fj}}};
}

Outcome cmd_verify(const Options& o) {
  std::optional<lindblad::NiceBasis> b;
  if (o.in) {
    const json doc = input_document(o);
    std::vector<CMatrix> el;
    for (const auto& m : field(doc, "elements")) el.push_back(io::to_complex_matrix(m, "elements"));
    if (el.empty()) throw UsageError("'elements' is empty");
    b.emplace(el);
    resolve_dim(o, b->dim());
  } else {
    b.emplace(basis_for(resolve_dim(o, std::nullopt)));
  }
  const lindblad::BasisReport r = lindblad::verify_nice_basis(*b, o.tol.value_or(lindblad::kAlgebraicTol));
  Outcome out{{{"dim", b->dim()},
               {"passed", r.passed},
               {"tolerance", r.tolerance},
               {"hermiticity", r.hermiticity},
               {"tracelessness", r.tracelessness},
               {"orthonormality", r.orthonormality},
               {"identity_element", r.identity_element}}};
  out.code = r.passed ? kExitOk : kExitNegative;
  return out;
}

lindblad::MasterEqParams read_params(const json& doc, const Options& o, int& d) {
  const CMatrix H = io::to_complex_matrix(field(doc, "H"), "H");
  if (H.rows() != H.cols()) throw UsageError("H must be square");
  d = resolve_dim(o, static_cast<int>(H.rows()));
  const CMatrix a = io::to_complex_matrix(field(doc, "a"), "a");
  return lindblad::MasterEqParams::make(H, a, o.tol.value_or(lindblad::kInputTol));
}

json pair_json(const lindblad::OdePair& p) {
  json j = {{"G", io::from_real_matrix(p.G)}, {"c", io::from_real_vector(p.c)}};
  if (p.Q) j["Q"] = io::from_real_matrix(*p.Q);
  if (p.R) j["R"] = io::from_real_matrix(*p.R);
  return j;
}

Outcome cmd_forward(const Options& o) {
  int d = 0;
  const auto p = read_params(input_document(o), o, d);
  const auto b = basis_for(d);
  const lindblad::OdePair pair = lindblad::forward_map(p, b);
  Outcome out{pair_json(pair)};
  out.result["dim"] = d;
  out.result["trace_shift"] = p.trace_shift;
  return out;
}

Outcome cmd_inverse(const Options& o) {
  const json doc = input_document(o);
  const RMatrix G = io::to_real_matrix(field(doc, "G"), "G");
  const int d = resolve_dim(o, dim_from_j(G.rows()));
  const auto b = basis_for(d);
  const lindblad::MasterEqParams p = lindblad::inverse_map(read_pair(doc, b.num_traceless()), b);
  return {{{"dim", d}, {"H", io::from_complex_matrix(p.H)}, {"a", io::from_complex_matrix(p.a)}}};
}

Outcome cmd_decompose(const Options& o) {
  const json doc = input_document(o);
  const RMatrix G = io::to_real_matrix(field(doc, "G"), "G");
  const int d = resolve_dim(o, dim_from_j(G.rows()));
  const auto b = basis_for(d);
  lindblad::detail::require_square(G, b.num_traceless(), "G");
  const lindblad::GDecomposition dec = lindblad::decompose_g(G, b);
  const double defect = lindblad::r_image_defect(dec.R, b);
  return {{{"dim", d},
           {"Q", io::from_real_matrix(dec.Q)},
           {"R", io::from_real_matrix(dec.R)},
           {"H", io::from_complex_matrix(lindblad::h_from_g(G, b))},
           {"r_image_defect", defect}}};
}

Outcome cmd_check_cp(const Options& o) {
  const json doc = input_document(o);
  const RMatrix G = io::to_real_matrix(field(doc, "G"), "G");
  const int d = resolve_dim(o, dim_from_j(G.rows()));
  const auto b = basis_for(d);
  const lindblad::CPReport r =
      lindblad::check_lindblad(read_pair(doc, b.num_traceless()), b, o.tol.value_or(lindblad::kInputTol));
  Outcome out{{{"dim", d},
               {"is_lindblad", r.is_lindblad},
               {"verdict", r.is_lindblad ? "lindblad" : "markovian_not_cp"},
               {"marginal", r.marginal},
               {"min_eigenvalue", r.min_eigenvalue},
               {"tolerance_used", r.tolerance_used},
               {"eigenvalues", io::from_real_vector(r.eigenvalues)},
               {"a", io::from_complex_matrix(r.a)}}};
  out.result["diagonal_form"] = r.diagonal_form ? diagonal_form_json(*r.diagonal_form) : json();
  out.code = r.is_lindblad ? kExitOk : kExitNegative;
  return out;
}

std::vector<double> read_times(const json& doc) {
  const RVector t = io::to_real_vector(field(doc, "times"), "times");
  if (t.size() == 0) throw UsageError("'times' is empty");
  return {t.data(), t.data() + t.size()};
}

Outcome cmd_solve(const Options& o) {
  const json doc = input_document(o);
  const RMatrix G = io::to_real_matrix(field(doc, "G"), "G");
  const int d = resolve_dim(o, dim_from_j(G.rows()));
  const int J = d * d - 1;
  const lindblad::OdePair pair = read_pair(doc, J);
  const RVector v0 = io::to_real_vector(field(doc, "v0"), "v0");
  const std::vector<double> times = read_times(doc);

  Outcome out;
  std::optional<lindblad::OdeSolution> sol;
  std::string reason;
  try {
    sol = lindblad::solve_diagonalizable(pair, v0, o.tol.value_or(1e-8));
    if (sol->kind != lindblad::SolutionKind::diagonalizable_invertible) {
      reason = "G is singular";
      sol.reset();
    }
  } catch (const lindblad::NotDiagonalizable&) {
    reason = "G is not numerically diagonalizable";
  } catch (const lindblad::SingularGenerator&) {
    reason = "G is singular";
  }
  if (!sol) {
    sol = lindblad::solve_general(pair, v0);
    out.notes["solver_fallback"] = reason;
  }
  json rows = json::array();
  for (double t : times) rows.push_back(io::from_real_vector(sol->evaluate(t)));
  out.result = {{"dim", d},
                {"solver", lindblad::to_string(sol->kind)},
                {"times", times},
                {"v", rows},
                {"steady_state_consistent", sol->steady_state_consistent}};
  out.result["v_infinity"] = sol->v_infinity ? io::from_real_vector(*sol->v_infinity) : json();
  out.notes["solver"] = lindblad::to_string(sol->kind);
  return out;
}

Outcome cmd_evolve(const Options& o) {
  const json doc = input_document(o);
  int d = 0;
  const auto p = read_params(doc, o, d);
  const auto b = basis_for(d);
  const CMatrix rho0 = io::to_complex_matrix(field(doc, "rho0"), "rho0");
  const std::vector<double> times = read_times(doc);
  const auto rhos = lindblad::evolve_density(p, rho0, times, b);
  json rj = json::array(), vj = json::array();
  for (const auto& r : rhos) {
    rj.push_back(io::from_complex_matrix(r));
    const CMatrix h = 0.5 * (r + r.adjoint());
    vj.push_back(io::from_real_vector(lindblad::traceless_coords(h, b).real()));
  }
  return {{{"dim", d}, {"times", times}, {"rho", rj}, {"v", vj}}};
}

json estimate_json(const lindblad::RarityEstimate& r) {
  return {{"ensemble", lindblad::to_string(r.ensemble)},
          {"dim_d", r.dim_d},
          {"J", r.J},
          {"n_samples", r.n_samples},
          {"n_positive", r.n_positive},
          {"p_hat", r.p_hat},
          {"ci_low", r.ci_low},
          {"ci_high", r.ci_high},
          {"seed", r.seed}};
}

Outcome cmd_rarity(const Options& o) {
  const std::string ens = o.ensemble.value_or("GinOE");
  const std::int64_t n = o.samples.value_or(10000);
  if (n < 1) throw UsageError("--samples must be >= 1");
  const std::uint64_t seed = o.seed.value_or(0);
  const int threads = o.threads.value_or(1);
  if (threads < 1) throw UsageError("--threads must be >= 1");
  Outcome out;
  if (ens == "GinOE") {
    const int d = resolve_dim(o, std::nullopt);
    if (d < 2) throw UsageError("GinOE needs --dim >= 2");
    const auto r = lindblad::estimate_p_lindblad_ginoe(d, n, seed, basis_for(d), threads,
                                                       o.tol.value_or(lindblad::kInputTol));
    out.result = estimate_json(r.lindblad);
    out.result["stable"] = estimate_json(r.stable);
    out.result["psd_but_unstable"] = r.psd_but_unstable;
  } else if (ens == "GUE") {
    int J = 0;
    if (o.J) {
      J = *o.J;
    } else if (o.dim) {
      J = *o.dim * *o.dim - 1;
    } else {
      throw UsageError("GUE needs --J or --dim");
    }
    if (J < 1) throw UsageError("GUE needs J >= 1");
    out.result = estimate_json(lindblad::estimate_p_gue(J, n, seed, threads));
  } else {
    throw UsageError("--ensemble must be GinOE or GUE");
  }
  return out;
}

Outcome cmd_roundtrip(const Options& o) {
  int d = 0;
  const auto p = read_params(input_document(o), o, d);
  const auto b = basis_for(d);
  const double tol = o.tol.value_or(1e-10);
  const double scale = std::max({1.0, lindblad::detail::max_abs(p.H), lindblad::detail::max_abs(p.a)});
  auto rel_error = [&](const lindblad::MasterEqParams& q) {
    return std::max(lindblad::detail::max_abs(CMatrix(q.H - p.H)), lindblad::detail::max_abs(CMatrix(q.a - p.a))) /
           scale;
  };
  const lindblad::OdePair pair = lindblad::forward_map(p, b);
  const double direct = rel_error(lindblad::inverse_map(pair, b));

  json routes = json::array();
  double worst = direct;
  for (const auto& cyc : lindblad::simple_cycles(lindblad::Space::V1)) {
    lindblad::SpaceValue v = p;
    std::string name;
    for (std::size_t k = 0; k + 1 < cyc.size(); ++k) {
      v = lindblad::phi_direct(cyc[k], cyc[k + 1], v, b);
      name += lindblad::to_string(cyc[k]) + "-";
    }
    name += lindblad::to_string(cyc.back());
    const double e = rel_error(std::get<lindblad::MasterEqParams>(v));
    worst = std::max(worst, e);
    routes.push_back({{"route", name}, {"relative_error", e}});
  }
  Outcome out{{{"dim", d},
               {"forward", pair_json(pair)},
               {"inverse_relative_error", direct},
               {"routes", routes},
               {"max_relative_error", worst},
               {"tolerance", tol},
               {"passed", worst <= tol}}};
  out.code = worst <= tol ? kExitOk : kExitNegative;
  return out;
}

void emit(const json& doc, const Options& o) {
  const std::string text = doc.dump(2) + "\n";
  if (!o.out || *o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(*o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + *o.out);
  f << text;
  if (!f) throw UsageError("write failed: " + *o.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markovian master equations and their coherence-vector ODEs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Options o;
  int dim = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::string out, config, in, ensemble;
  std::int64_t samples = 0;
  int J = 0, threads = 0;

  auto* dim_opt = app.add_option("--dim", dim, "Hilbert space dimension d");
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance override for the command");
  auto* seed_opt = app.add_option("--seed", seed, "Random seed");
  auto* out_opt = app.add_option("--out", out, "Output file (default stdout)");
  app.add_option("--config", config, "JSON config file; command-line flags take precedence")
      ->check(CLI::ExistingFile);

  using Handler = std::function<Outcome(const Options&)>;
  std::map<CLI::App*, std::pair<std::string, Handler>> handlers;
  std::map<CLI::App*, CLI::Option*> in_opts;
  auto add = [&](const std::string& name, const std::string& help, Handler h, bool takes_input) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (takes_input) in_opts[sub] = sub->add_option("--in", in, "Input JSON file")->check(CLI::ExistingFile);
    handlers[sub] = {name, std::move(h)};
    return sub;
  };
  add("basis", "Generate the normalized Gell-Mann basis and structure constants", cmd_basis, false);
  add("verify", "Verify a nice operator basis (file via --in, or generated from --dim)", cmd_verify, true);
  add("forward", "(H, a) -> (G, c, Q, R)", cmd_forward, true);
  add("inverse", "(G, c) -> (H, a)", cmd_inverse, true);
  add("decompose", "G -> (Q, R)", cmd_decompose, true);
  add("check-cp", "Is (G, c) a Lindblad generator? exit 0 yes, 3 no", cmd_check_cp, true);
  add("solve", "Solve v' = G v + c at the given times", cmd_solve, true);
  add("evolve", "Evolve a density matrix under (H, a)", cmd_evolve, true);
  CLI::App* rarity = add("rarity", "Monte Carlo rarity of Lindbladians", cmd_rarity, false);
  auto* ens_opt = rarity->add_option("--ensemble", ensemble, "GinOE or GUE");
  auto* samples_opt = rarity->add_option("--samples", samples, "Number of samples");
  auto* j_opt = rarity->add_option("--J", J, "GUE matrix size");
  auto* threads_opt = rarity->add_option("--threads", threads, "Worker threads (counts do not depend on it)");
  add("roundtrip", "Forward, inverse and every diagram cycle on (H, a)", cmd_roundtrip, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (dim_opt->count()) o.dim = dim;
    if (tol_opt->count()) o.tol = tol;
    if (seed_opt->count()) o.seed = seed;
    if (out_opt->count()) o.out = out;
    if (ens_opt->count()) o.ensemble = ensemble;
    if (samples_opt->count()) o.samples = samples;
    if (j_opt->count()) o.J = J;
    if (threads_opt->count()) o.threads = threads;
    CLI::App* sub = app.get_subcommands().front();
    if (in_opts.count(sub) && in_opts[sub]->count()) o.in = in;
    if (!config.empty()) merge_config(o, config);
    if (o.tol && !(*o.tol > 0.0)) throw UsageError("--tol must be positive");

    const auto& [name, handler] = handlers.at(sub);
    Outcome res = handler(o);
    json meta = {{"tool", "lindblad-ode"}, {"version", kVersion}, {"command", name}};
    if (o.seed) meta["seed"] = *o.seed;
    if (o.tol) meta["tol"] = *o.tol;
    for (const auto& item : res.notes.items()) meta[item.key()] = item.value();
    emit(json{{"metadata", meta}, {"result", res.result}}, o);
    return res.code;
  } catch (const std::exception& e) {
    std::cerr << "lindblad-ode: error: " << e.what() << "\n";
    return kExitError;
  }
}
