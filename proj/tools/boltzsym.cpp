// boltzsym: command-line front end.
//
// Exit codes: 0 ok, 1 verification failed, 2 blow-up, 3 singular source,
// 4 unsupported input (no series, domain, no real solution, inconsistent
// recursion, insufficient decay), 5 I/O, 64 usage.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "boltzsym/classification.hpp"
#include "boltzsym/determining.hpp"
#include "boltzsym/errors.hpp"
#include "boltzsym/grid.hpp"
#include "boltzsym/integrator.hpp"
#include "boltzsym/invariant.hpp"
#include "boltzsym/lie.hpp"
#include "boltzsym/transform.hpp"

using namespace boltzsym;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kBlowUp = 2, kSingular = 3, kUnsupported = 4, kIo = 5, kUsage = 64 };

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(what + ": cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

std::map<std::size_t, double> parse_choices(const std::string& s) {
  std::map<std::size_t, double> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--res: expected n=value, got '" + item + "'");
    try {
      const long n = std::stol(item.substr(0, eq));
      if (n < 0) throw std::invalid_argument("negative");
      out[static_cast<std::size_t>(n)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--res: cannot parse '" + item + "'");
    }
  }
  return out;
}

/// Writes to the named file, or stdout when the name is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw IoError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

struct SourceOptions {
  std::string source = "zero";
  double beta = 1.0;
  double gamma = 0.0;
  std::string phi;
  std::string q;

  void add(CLI::App* app) {
    app->add_option("--source", source, "zero | row1..row11 | custom")->capture_default_str();
    app->add_option("--beta", beta, "source amplitude")->capture_default_str();
    app->add_option("--gamma", gamma, "source exponent")->capture_default_str();
    app->add_option("--phi", phi, "Phi coefficients c0,c1,...");
    app->add_option("--q", q, "custom source coefficients c0,c1,...");
  }

  SourceModel build() const {
    if (source == "zero") return SourceModel::zero();
    if (source == "custom") {
      const auto c = parse_list(q, "--q");
      if (c.empty()) throw UsageError("--source custom needs --q");
      return SourceModel::custom(c);
    }
    if (source.rfind("row", 0) == 0) {
      int k = 0;
      try {
        k = std::stoi(source.substr(3));
      } catch (const std::exception&) {
        throw UsageError("unknown source '" + source + "'");
      }
      if (k < 1 || k > 11) throw UsageError("source row must be 1..11");
      try {
        return SourceModel::row(k, beta, gamma, parse_list(phi, "--phi"));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    throw UsageError("unknown source '" + source + "'");
  }
};

double bkw_profile(double z) { return 6.0 * std::exp(z) * (1.0 - z); }

struct SolveOptions {
  std::string backend = "series";
  SourceOptions src;
  std::string init = "equilibrium";
  double t0 = 0.0, t1 = 1.0, dt = kDefaultStep;
  std::size_t order = kDefaultTruncation;
  std::size_t n_points = 801;
  double x_max = 1.0;
  std::size_t record_every = 1;
  double blowup = kDefaultBlowupThreshold;
  std::string method = "fft";
  std::string out;
};

Coeffs series_init(const SolveOptions& o) {
  Coeffs c;
  if (o.init == "bkw") return bkw_coeffs(o.order);
  if (o.init == "equilibrium") return equilibrium_coeffs(o.order);
  if (o.init.rfind("coeffs:", 0) == 0) {
    c = parse_list(o.init.substr(7), "--init");
  } else {
    auto in = open_input(o.init);
    try {
      c = read_coeffs_csv(in);
    } catch (const std::exception& e) {
      throw IoError(o.init + ": " + e.what());
    }
  }
  if (c.empty()) throw UsageError("--init gave no coefficients");
  if (c.size() > o.order + 1) throw UsageError("--init has more coefficients than --N allows");
  c.resize(o.order + 1, 0.0);
  return c;
}

GridState grid_init(const SolveOptions& o) {
  if (o.n_points < 3) throw UsageError("--n-points must be at least 3");
  if (o.init == "bkw") return GridState::sample(o.x_max, o.n_points, bkw_profile, o.t0);
  if (o.init == "equilibrium") return GridState::sample(o.x_max, o.n_points, [](double x) { return std::exp(-x); }, o.t0);
  if (o.init.rfind("coeffs:", 0) == 0) {
    const auto c = parse_list(o.init.substr(7), "--init");
    return GridState::sample(o.x_max, o.n_points, [&](double x) { return eval_series(c, x); }, o.t0);
  }
  auto in = open_input(o.init);
  try {
    return read_grid_csv(in, o.t0);
  } catch (const std::exception& e) {
    throw IoError(o.init + ": " + e.what());
  }
}

int cmd_solve(const SolveOptions& o) {
  const auto src = o.src.build();
  IntegrationConfig cfg;
  cfg.t0 = o.t0;
  cfg.t1 = o.t1;
  cfg.dt = o.dt;
  cfg.record_every = o.record_every;
  cfg.blowup_threshold = o.blowup;
  cfg.grid_method = o.method == "direct" ? ConvolutionMethod::direct : ConvolutionMethod::fft;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Output out(o.out);
  std::cerr << std::setprecision(17);
  if (o.backend == "series") {
    const auto traj = integrate(SeriesState{series_init(o), o.t0}, src, cfg);
    write_trajectory_jsonl(out.stream(), traj);
    std::cerr << "t=" << traj.times.back() << " a0=" << traj.states.back().coeffs[0] << '\n';
  } else {
    const auto traj = integrate(grid_init(o), src, cfg);
    write_trajectory_jsonl(out.stream(), traj);
    std::cerr << "t=" << traj.times.back() << " phi(0)=" << traj.states.back().values()[0] << '\n';
  }
  return kOk;
}

struct VerifyOptions {
  std::string kind;
  double beta = 1.3;
  double gamma = 2.0;
  std::string phi = "1,1,0.5";
  std::optional<double> fixed_gamma;
  std::vector<int> rows;
  std::uint64_t seed = 7;
  std::string out;
};

int verify_table2_cmd(const VerifyOptions& o, std::ostream& os) {
  const auto rep = verify_table2(o.beta, o.gamma, parse_list(o.phi, "--phi"));
  write_table2_csv(os, rep);
  for (int r : rep.failing_rows()) std::cerr << "row " << r << " failed\n";
  return rep.all_pass() ? kOk : kVerifyFailed;
}

int verify_optimal_system_cmd(const VerifyOptions& o, std::ostream& os) {
  std::vector<double> gammas(lie::kGammaSamples.begin(), lie::kGammaSamples.end());
  if (o.fixed_gamma) gammas = {*o.fixed_gamma};
  os << "index,basis,closed,witness\n";
  bool all = true;
  for (const auto& entry : lie::optimal_system_table()) {
    bool closed = true;
    std::string witness;
    for (double g : gammas) {
      const auto r = lie::is_subalgebra(entry.instantiate(g));
      if (!r.closed) {
        closed = false;
        witness = r.witness->to_string() + (entry.has_gamma() ? " (gamma=" + std::to_string(g) + ")" : "");
        break;
      }
    }
    all = all && closed;
    os << entry.index << ',' << entry.basis_string() << ',' << (closed ? "true" : "false") << ',' << witness << '\n';
  }
  for (const auto& d : lie::structure_constant_discrepancies()) {
    std::cerr << "[X" << d.i << ",X" << d.j << "]: computed "
              << lie::LieElement{{to_double(d.computed[0]), to_double(d.computed[1]), to_double(d.computed[2]),
                                  to_double(d.computed[3])}}
                     .to_string()
              << ", printed "
              << lie::LieElement{{to_double(d.printed[0]), to_double(d.printed[1]), to_double(d.printed[2]),
                                  to_double(d.printed[3])}}
                     .to_string()
              << '\n';
  }
  return all ? kOk : kVerifyFailed;
}

int verify_determining_cmd(const VerifyOptions& o, std::ostream& os) {
  const std::vector<int> rows = o.rows.empty() ? std::vector<int>{1, 4, 10, 11} : o.rows;
  for (int r : rows) {
    if (r < 1 || r > 11) throw UsageError("--row must be 1..11");
  }
  const auto rep = verify_determining(rows, o.seed, o.beta, o.gamma, parse_list(o.phi, "--phi"));
  write_determining_csv(os, rep);
  return rep.all_pass() ? kOk : kVerifyFailed;
}

int verify_invariant_cmd(std::ostream& os) {
  struct Check {
    std::string name;
    double residual;
    double tol;
  };
  std::vector<Check> checks;
  {
    CaseParams p;
    p.beta = 4.0 / 3.0;
    for (double C : closed_form_C_quadratic(p.beta)) {
      p.C = C;
      checks.push_back({"4.1c", verify_lifted({CaseId::c4_1c, p, {}}, Region{0.0, 1.0, 21, 0.0, 1.0, 21}), 1e-9});
    }
  }
  {
    CaseParams p;
    p.beta = -1.0;
    p.gamma = 2.0;
    p.C = closed_form_C_power(p.beta, p.gamma)[1];
    checks.push_back({"4.2a", verify_lifted({CaseId::c4_2a, p, {}}, Region{0.0, 1.0, 21, 0.0, 1.0, 21}), 1e-9});
  }
  {
    CaseParams p;
    p.beta = 1.0;
    checks.push_back({"4.3a", verify_lifted({CaseId::c4_3a, p, {}}, Region{0.0, 1.0, 21, 1.0, 2.0, 21}), 1e-9});
    p.C = 0.5;
    checks.push_back({"4.3c", verify_lifted({CaseId::c4_3c, p, {}}, Region{0.0, 1.0, 21, 1.0, 2.0, 21}), 1e-9});
  }
  {
    const auto prob = make_reduced_problem(CaseId::c4_7, {});
    const auto r = solve_reduced_series(prob, 6.0, {{2, -3.0}, {3, -2.0}});
    checks.push_back({"4.7", verify_lifted({CaseId::c4_7, {}, r.coeffs}, Region{0.0, 1.0, 21, 0.0, 1.0, 21}), 1e-9});
  }
  {
    CaseParams p;
    p.phi = {1.0, -2.0, 0.5};
    p.C = 0.3;
    checks.push_back({"4.9", verify_lifted({CaseId::c4_9, p, {}}, Region{0.0, 1.0, 21, 0.0, 1.0, 21}), 1e-9});
  }
  os << "case,residual,pass\n" << std::setprecision(17);
  bool all = true;
  for (const auto& c : checks) {
    const bool pass = c.residual <= c.tol;
    all = all && pass;
    os << c.name << ',' << c.residual << ',' << (pass ? "true" : "false") << '\n';
  }
  return all ? kOk : kVerifyFailed;
}

int cmd_verify(const VerifyOptions& o) {
  Output out(o.out);
  if (o.kind == "table2") return verify_table2_cmd(o, out.stream());
  if (o.kind == "optimal-system") return verify_optimal_system_cmd(o, out.stream());
  if (o.kind == "determining") return verify_determining_cmd(o, out.stream());
  return verify_invariant_cmd(out.stream());
}

struct InvariantOptions {
  std::string case_id;
  std::optional<double> r0;
  std::string res;
  double beta = 1.0, gamma = 1.0, alpha = 1.0;
  std::optional<double> C;
  std::string phi;
  std::size_t order = kDefaultTruncation;
  bool verify = false;
  double x_lo = 0.0, x_hi = 1.0, t_lo = 1.0, t_hi = 2.0;
  std::string out;
};

int cmd_invariant(const InvariantOptions& o) {
  CaseId id;
  try {
    id = parse_case(o.case_id);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  CaseParams p;
  p.beta = o.beta;
  p.gamma = o.gamma;
  p.alpha = o.alpha;
  // 4.1c and 4.2a fix C from beta (and gamma) unless it is given.
  if (o.C) p.C = *o.C;
  else if (id == CaseId::c4_1c) p.C = closed_form_C_quadratic(p.beta).front();
  else if (id == CaseId::c4_2a) p.C = closed_form_C_power(p.beta, p.gamma).back();
  p.phi = parse_list(o.phi, "--phi");
  Output out(o.out);
  InvariantSolution sol{id, p, {}};
  std::cerr << std::setprecision(17);
  double reduced = 0.0;
  if (!is_closed_form(id)) {
    const auto prob = make_reduced_problem(id, p, o.order);
    const auto prof = solve_reduced_series(prob, o.r0, parse_choices(o.res), o.order);
    sol.profile = prof.coeffs;
    auto& os = out.stream();
    os << "n,r_n\n" << std::setprecision(17);
    for (std::size_t n = 0; n < prof.coeffs.size(); ++n) os << n << ',' << prof.coeffs[n] + 0.0 << '\n';
    std::string res;
    for (auto n : prof.resonances) res += (res.empty() ? "" : ",") + std::to_string(n);
    std::cerr << "resonances=" << (res.empty() ? "none" : res) << '\n';
    if (o.verify) {
      reduced = reduced_residual(prob, prof, linspace(0.0, 1.0, 101));
      std::cerr << "reduced_residual=" << reduced << '\n';
    }
  } else {
    out.stream() << "case,C\n" << std::setprecision(17) << to_string(id) << ',' << p.C << '\n';
  }
  if (!o.verify) return kOk;
  const double lifted = verify_lifted(sol, Region{o.x_lo, o.x_hi, 21, o.t_lo, o.t_hi, 21}, o.order);
  std::cerr << "lifted_residual=" << lifted << '\n';
  return reduced <= 1e-9 && lifted <= 1e-9 ? kOk : kVerifyFailed;
}

struct BenchOptions {
  std::string kernel = "conv";
  std::string sizes = "64,256,1024";
  std::string out;
};

int cmd_bench(const BenchOptions& o) {
  if (o.kernel != "conv") throw UsageError("only the 'conv' benchmark exists");
  std::vector<std::size_t> sizes;
  for (double v : parse_list(o.sizes, "--sizes")) {
    if (v < 3 || v != std::floor(v)) throw UsageError("--sizes entries must be integers >= 3");
    sizes.push_back(static_cast<std::size_t>(v));
  }
  if (sizes.empty()) throw UsageError("--sizes is empty");
  const auto rows = bench_convolution(sizes);
  Output out(o.out);
  write_bench_csv(out.stream(), rows);
  return kOk;
}

struct TransformOptions {
  std::string dir;
  std::string in;
  double range = 12.0;
  std::size_t n_points = 2001;
  std::string normalization = "round-trip";
  std::string out;
};

int cmd_transform(const TransformOptions& o) {
  auto in = open_input(o.in);
  RadialFunction f;
  try {
    f = read_radial_csv(in);
  } catch (const std::exception& e) {
    throw IoError(o.in + ": " + e.what());
  }
  if (o.n_points < 4) throw UsageError("--n-points must be at least 4");
  Output out(o.out);
  if (o.dir == "forward") {
    write_radial_csv(out.stream(), forward_transform(f, o.range, o.n_points), "k");
  } else {
    const auto norm = o.normalization == "printed" ? InverseNormalization::printed : InverseNormalization::round_trip;
    write_radial_csv(out.stream(), inverse_transform(f, o.range, o.n_points, norm), "v");
  }
  return kOk;
}

template <class F>
int run_guarded(F&& f) {
  try {
    return f();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << '\n';
    return kBlowUp;
  } catch (const SingularSourceError& e) {
    std::cerr << "singular source: " << e.what() << '\n';
    return kSingular;
  } catch (const Error& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Series and grid solvers, symmetry checks and invariant solutions for the Fourier-transformed "
               "isotropic Boltzmann equation with a source"};
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "integrate the equation and write a JSON-lines trajectory");
  s->add_option("--backend", solve.backend)->check(CLI::IsMember({"series", "grid"}))->capture_default_str();
  solve.src.add(s);
  s->add_option("--init", solve.init, "bkw | equilibrium | coeffs:c0,c1,... | CSV path")->capture_default_str();
  s->add_option("--t0", solve.t0)->capture_default_str();
  s->add_option("--t1", solve.t1)->capture_default_str();
  s->add_option("--dt", solve.dt)->capture_default_str();
  s->add_option("--N", solve.order, "series truncation")->check(CLI::Range(0, static_cast<int>(kMaxWeightOrder)))->capture_default_str();
  s->add_option("--n-points", solve.n_points)->capture_default_str();
  s->add_option("--x-max", solve.x_max)->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--record-every", solve.record_every)->capture_default_str();
  s->add_option("--blowup-threshold", solve.blowup)->capture_default_str();
  s->add_option("--method", solve.method)->check(CLI::IsMember({"direct", "fft"}))->capture_default_str();
  s->add_option("--out", solve.out, "output path (default stdout)");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "run a verification and write a CSV report");
  v->add_option("kind", verify.kind)->required()->check(CLI::IsMember({"table2", "optimal-system", "determining", "invariant"}));
  v->add_option("--beta", verify.beta)->capture_default_str();
  v->add_option("--gamma", verify.gamma)->capture_default_str();
  v->add_option("--phi", verify.phi)->capture_default_str();
  v->add_option("--at-gamma", verify.fixed_gamma, "optimal system at one gamma instead of the sample set");
  v->add_option("--row", verify.rows, "classification rows for the determining check")->delimiter(',');
  v->add_option("--seed", verify.seed)->capture_default_str();
  v->add_option("--out", verify.out);

  InvariantOptions inv;
  auto* i = app.add_subcommand("invariant", "solve a reduced equation and export the profile");
  i->add_option("--case", inv.case_id, "4.1a ... 4.10")->required();
  i->add_option("--r0", inv.r0);
  i->add_option("--res", inv.res, "resonant choices n=value,...");
  i->add_option("--beta", inv.beta)->capture_default_str();
  i->add_option("--gamma", inv.gamma)->capture_default_str();
  i->add_option("--alpha", inv.alpha)->capture_default_str();
  i->add_option("--C", inv.C);
  i->add_option("--phi", inv.phi);
  i->add_option("--N", inv.order)->check(CLI::Range(0, static_cast<int>(kMaxWeightOrder)))->capture_default_str();
  i->add_flag("--verify", inv.verify, "report reduced and lifted residuals");
  i->add_option("--x-lo", inv.x_lo)->capture_default_str();
  i->add_option("--x-hi", inv.x_hi)->capture_default_str();
  i->add_option("--t-lo", inv.t_lo)->capture_default_str();
  i->add_option("--t-hi", inv.t_hi)->capture_default_str();
  i->add_option("--out", inv.out);

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "time the grid collision kernels");
  b->add_option("kernel", bench.kernel)->check(CLI::IsMember({"conv"}))->capture_default_str();
  b->add_option("--sizes", bench.sizes)->capture_default_str();
  b->add_option("--out", bench.out);

  TransformOptions tr;
  auto* t = app.add_subcommand("transform", "radial transform between f(v) and phi~(k)");
  t->add_option("--dir", tr.dir)->required()->check(CLI::IsMember({"forward", "inverse"}));
  t->add_option("--in", tr.in, "CSV with columns v,value or k,value")->required();
  t->add_option("--max", tr.range, "k_max (forward) or v_max (inverse)")->capture_default_str();
  t->add_option("--n-points", tr.n_points)->capture_default_str();
  t->add_option("--normalization", tr.normalization)->check(CLI::IsMember({"round-trip", "printed"}))->capture_default_str();
  t->add_option("--out", tr.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (s->parsed()) return run_guarded([&] { return cmd_solve(solve); });
  if (v->parsed()) return run_guarded([&] { return cmd_verify(verify); });
  if (i->parsed()) return run_guarded([&] { return cmd_invariant(inv); });
  if (b->parsed()) return run_guarded([&] { return cmd_bench(bench); });
  return run_guarded([&] { return cmd_transform(tr); });
}
