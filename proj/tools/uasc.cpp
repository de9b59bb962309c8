#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uasc/diagnostics.hpp"
#include "uasc/eikonal.hpp"
#include "uasc/fit.hpp"
#include "uasc/plotdata.hpp"
#include "uasc/sweep.hpp"

namespace {

using namespace uasc;

struct EikonalFlags {
  std::string solver = "semilag";
  int depth = 1;
  double delta_log = 0.1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--eikonal", solver,
                    "phase solver: semilag|semilag1|semilag2|lie|strang");
    cmd->add_option("--eikonal-depth", depth, "semi-Lagrangian foot depth");
    cmd->add_option("--delta-log", delta_log, "Cole-Hopf logarithm guard");
  }
};

void write_observables(const std::string& path,
                       const std::vector<harness::ObservableRow>& series) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write observables file: " + path);
  out << "# t mass energy momentum l2\n";
  char buf[200];
  for (const auto& r : series) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g %.17g\n", r.t,
                  r.obs.mass, r.obs.energy, r.obs.momentum, r.l2);
    out << buf;
  }
}

int do_run(const std::string& scheme, const std::string& data, double eps,
           long nx, long nt, double h, double tf, const EikonalFlags& eik,
           bool dealias, bool interp_exact, int stride,
           const std::string& out_path, const std::string& obs_path,
           const std::string& resume_path, const KeyValues& limits_kv) {
  harness::RunSpec spec;
  spec.scheme = harness::parse_scheme(scheme);
  spec.eps = eps;
  spec.nx = static_cast<int>(nx);
  spec.tf = tf;
  spec.data_id = data;
  spec.stride = stride;
  spec.h = nt > 0 ? tf / nt : h;
  spec.params.eik = harness::parse_eikonal(eik.solver, eik.depth, eik.delta_log);
  spec.params.dealias = dealias;
  spec.params.interp_exact = interp_exact;
  const gpe::ResourceLimits limits = resolve_limits(limits_kv);

  harness::RunOutput out;
  if (resume_path.empty()) {
    out = harness::run_single(spec, limits);
  } else {
    const StateSnapshot start = load_snapshot(resume_path);
    spec.eps = start.eps;
    spec.nx = start.grid().n;
    out = harness::run_single_from(spec, start, limits);
  }

  const auto& last = out.series.back();
  std::printf("t=%.17g mass=%.17g energy=%.17g momentum=%.17g l2=%.17g\n",
              last.t, last.obs.mass, last.obs.energy, last.obs.momentum,
              last.l2);
  if (!out_path.empty()) save_snapshot(out.final_state, out_path);
  if (!obs_path.empty()) write_observables(obs_path, out.series);
  return 0;
}

int do_sweep(const std::string& config_path,
             const std::vector<std::string>& sets,
             const std::string& csv_path) {
  KeyValues kv = config_path.empty() ? KeyValues{}
                                     : KeyValues::from_file(config_path);
  for (const std::string& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw UsageError("--set expects key=value, got: " + s);
    kv.set(s.substr(0, eq), s.substr(eq + 1));
  }
  const harness::SweepConfig cfg = harness::sweep_config_from(kv);
  const auto records = harness::run_sweep(cfg, resolve_limits(kv));
  const std::string csv = harness::to_csv(records);
  if (csv_path.empty() || csv_path == "-") {
    std::fputs(csv.c_str(), stdout);
  } else {
    std::ofstream out(csv_path);
    if (!out) throw UsageError("cannot write csv: " + csv_path);
    out << csv;
  }
  for (const auto& r : records)
    if (r.status != "ok" && r.status != "fit") return 1;
  return 0;
}

int do_reference(const std::string& kind, double eps, long nx, long nt,
                 double tf, const std::string& data, const EikonalFlags& eik,
                 const std::string& out_path, const KeyValues& limits_kv) {
  gpe::ReferenceRequest req;
  req.kind = kind;
  req.eps = eps;
  req.tf = tf;
  req.nx = static_cast<int>(nx);
  req.nt = nt;
  req.data_id = data;
  req.params.eik = harness::parse_eikonal(eik.solver, eik.depth, eik.delta_log);
  const StateSnapshot snap =
      gpe::generate_reference(req, resolve_limits(limits_kv));
  save_snapshot(snap, out_path);
  std::printf("wrote %s (%s, nx=%d, eps=%.17g, tf=%.17g)\n", out_path.c_str(),
              snap.kind.c_str(), snap.grid().n, snap.eps, snap.tf);
  return 0;
}

int do_compare(const std::string& cand_path, const std::string& ref_path,
               const std::string& metrics, bool include_imag_s) {
  const StateSnapshot cand = load_snapshot(cand_path);
  const StateSnapshot ref = load_snapshot(ref_path);
  diag::MetricRequest req{false, false, false, include_imag_s};
  size_t pos = 0;
  while (pos != std::string::npos) {
    const size_t next = metrics.find(',', pos);
    const std::string tok = metrics.substr(
        pos, next == std::string::npos ? std::string::npos : next - pos);
    if (tok == "rho") req.rho = true;
    else if (tok == "psi") req.psi = true;
    else if (tok == "sa") req.sa = true;
    else if (!tok.empty()) throw UsageError("unknown metric: " + tok);
    pos = next == std::string::npos ? next : next + 1;
  }
  const diag::ErrorMetrics em = diag::compute_errors(cand, ref, req);
  if (em.rho) std::printf("err_rho=%.17g\n", *em.rho);
  if (em.psi) std::printf("err_psi=%.17g\n", *em.psi);
  if (em.sa) std::printf("err_sa=%.17g\n", *em.sa);
  return 0;
}

int do_eikonal(const std::string& solver, int depth, double delta_log,
               long nx, double tmax, const std::vector<long>& nt_list,
               const std::string& data_id, int oracle_substeps) {
  const eikonal::SolverKind kind =
      harness::parse_eikonal(solver, depth, delta_log);
  const Grid g = make_grid(static_cast<int>(nx));
  const InitialData data = make_initial_data(data_id);
  const RealField s0 = RealField::sampled(g, data.S0);
  const RealField ref =
      eikonal::characteristics_oracle(s0, tmax, oracle_substeps);
  const auto [ref_l1, ref_l2] = diag::discrete_norms(ref);
  (void)ref_l1;

  std::vector<double> hs, errs;
  for (long nt : nt_list) {
    const double h = tmax / nt;
    RealField s = s0;
    for (long i = 0; i < nt; ++i) s = eikonal::solve_step(s, h, kind);
    double num = 0.0;
    for (int j = 0; j < g.n; ++j) num += (s[j] - ref[j]) * (s[j] - ref[j]);
    const double err = std::sqrt(g.dx() * num) / ref_l2;
    hs.push_back(h);
    errs.push_back(err);
    std::printf("nt=%ld h=%.17g err_l2=%.17g\n", nt, h, err);
  }
  if (hs.size() >= 2) {
    const OrderFit fit = fit_loglog(hs, errs, 1e-13);
    if (fit.valid)
      std::printf("fitted_order=%.4f points=%d\n", fit.slope, fit.points_used);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "uasc: time-splitting solvers for the semiclassical nonlinear "
      "Schroedinger equation in phase-amplitude form"};
  app.require_subcommand(1);

  KeyValues limits_kv;
  long max_nx = -1, max_nt = -1;
  app.add_option("--max-nx", max_nx, "resource ceiling on grid size");
  app.add_option("--max-nt", max_nt, "resource ceiling on step count");

  // run
  auto* run = app.add_subcommand("run", "single simulation run");
  std::string r_scheme = "scheme2", r_data = "paper", r_out, r_obs, r_resume;
  double r_eps = 1.0, r_h = 0.0, r_tf = 0.1;
  long r_nx = 128, r_nt = 0;
  bool r_dealias = false, r_exact = false;
  int r_stride = 0;
  EikonalFlags r_eik;
  run->add_option("--scheme", r_scheme, "scheme1|scheme2|scheme4|strang_gpe");
  run->add_option("--eps", r_eps, "semiclassical parameter");
  run->add_option("--nx", r_nx, "grid points");
  run->add_option("--nt", r_nt, "number of steps (h = tf/nt)");
  run->add_option("--dt", r_h, "time step (alternative to --nt)");
  run->add_option("--tf", r_tf, "final time");
  run->add_option("--data", r_data, "initial data id (paper|zero)");
  run->add_flag("--dealias", r_dealias, "2/3-rule filter after each step");
  run->add_flag("--interp-exact", r_exact, "exact-mode series evaluation");
  run->add_option("--stride", r_stride, "observable recording stride");
  run->add_option("--out", r_out, "write final snapshot here");
  run->add_option("--observables", r_obs, "write observable series here");
  run->add_option("--resume", r_resume, "resume from a snapshot");
  r_eik.attach(run);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "error sweep over (eps, h or nx)");
  std::string s_config, s_csv;
  std::vector<std::string> s_sets;
  sweep->add_option("--config", s_config, "flat key-value config file");
  sweep->add_option("--set", s_sets, "override config entries (key=value)");
  sweep->add_option("--csv", s_csv, "output csv path (default stdout)");

  // reference
  auto* refc = app.add_subcommand("reference", "generate a reference snapshot");
  std::string f_kind = "wkb4", f_data = "paper", f_out;
  double f_eps = 1.0, f_tf = 0.1;
  long f_nx = 256, f_nt = 8192;
  EikonalFlags f_eik;
  refc->add_option("--kind", f_kind, "wkb4|gpe");
  refc->add_option("--eps", f_eps, "semiclassical parameter");
  refc->add_option("--nx", f_nx, "grid points");
  refc->add_option("--nt", f_nt, "number of steps");
  refc->add_option("--tf", f_tf, "final time");
  refc->add_option("--data", f_data, "initial data id");
  refc->add_option("--out", f_out, "snapshot path")->required();
  f_eik.attach(refc);

  // compare
  auto* cmp = app.add_subcommand("compare", "error metrics between snapshots");
  std::string c_cand, c_ref, c_metrics = "rho,sa";
  bool c_imag = false;
  cmp->add_option("--candidate", c_cand)->required();
  cmp->add_option("--reference", c_ref)->required();
  cmp->add_option("--metrics", c_metrics, "comma list of rho,psi,sa");
  cmp->add_flag("--include-imag-s", c_imag, "add Im S to the (S, A) metric");

  // eikonal
  auto* eik = app.add_subcommand("eikonal",
                                 "standalone Hamilton-Jacobi phase runs");
  std::string e_solver = "semilag", e_data = "paper";
  int e_depth = 1, e_substeps = 1024;
  long e_nx = 128;
  double e_tmax = 0.1, e_delta = 0.1;
  std::vector<long> e_nts = {64};
  eik->add_option("--solver", e_solver, "semilag|semilag1|semilag2|lie|strang");
  eik->add_option("--depth", e_depth, "semi-Lagrangian foot depth");
  eik->add_option("--delta-log", e_delta, "Cole-Hopf logarithm guard");
  eik->add_option("--nx", e_nx, "grid points");
  eik->add_option("--tmax", e_tmax, "final time");
  eik->add_option("--nt-list", e_nts, "step counts to run")->delimiter(',');
  eik->add_option("--data", e_data, "initial data id (uses its phase)");
  eik->add_option("--oracle-substeps", e_substeps,
                  "characteristics-oracle continuation substeps");

  // plotdata
  auto* plot = app.add_subcommand("plotdata", "split sweep csv into curves");
  std::string p_csv, p_axes = "h", p_outdir = ".", p_svg;
  plot->add_option("--csv", p_csv, "sweep csv file")->required();
  plot->add_option("--axes", p_axes, "h|dx|eps");
  plot->add_option("--outdir", p_outdir, "output directory");
  plot->add_option("--svg", p_svg, "also render a log-log svg here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (max_nx > 0) limits_kv.set("max_nx", std::to_string(max_nx));
    if (max_nt > 0) limits_kv.set("max_nt", std::to_string(max_nt));

    if (run->parsed()) {
      if ((r_nt > 0) == (r_h > 0.0))
        throw UsageError("give exactly one of --nt and --dt");
      return do_run(r_scheme, r_data, r_eps, r_nx, r_nt, r_h, r_tf, r_eik,
                    r_dealias, r_exact, r_stride, r_out, r_obs, r_resume,
                    limits_kv);
    }
    if (sweep->parsed()) return do_sweep(s_config, s_sets, s_csv);
    if (refc->parsed())
      return do_reference(f_kind, f_eps, f_nx, f_nt, f_tf, f_data, f_eik,
                          f_out, limits_kv);
    if (cmp->parsed()) return do_compare(c_cand, c_ref, c_metrics, c_imag);
    if (eik->parsed())
      return do_eikonal(e_solver, e_depth, e_delta, e_nx, e_tmax, e_nts,
                        e_data, e_substeps);
    if (plot->parsed()) {
      harness::PlotOptions opt{p_axes, p_outdir, p_svg};
      std::ifstream in(p_csv);
      if (!in) throw UsageError("cannot open csv: " + p_csv);
      std::string csv((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
      for (const std::string& f : harness::emit_plotdata(csv, opt))
        std::printf("%s\n", f.c_str());
      return 0;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", e.code().c_str(), e.what());
    return 1;
  }
  return 2;
}
