#include "uasc/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>

namespace uasc::harness {

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::scheme1: return "scheme1";
    case Scheme::scheme2: return "scheme2";
    case Scheme::scheme4: return "scheme4";
    case Scheme::strang_gpe: return "strang_gpe";
  }
  throw StructuralError("unknown scheme");
}

Scheme parse_scheme(const std::string& name) {
  if (name == "scheme1") return Scheme::scheme1;
  if (name == "scheme2") return Scheme::scheme2;
  if (name == "scheme4") return Scheme::scheme4;
  if (name == "strang_gpe") return Scheme::strang_gpe;
  throw UsageError("unknown scheme: " + name);
}

eikonal::SolverKind parse_eikonal(const std::string& name, int depth,
                                  double delta_log) {
  eikonal::SolverKind kind;
  if (name == "semilag") {
    kind = eikonal::SolverKind::semi_lagrangian(depth);
  } else if (name == "semilag1") {
    kind = eikonal::SolverKind::semi_lagrangian(1);
  } else if (name == "semilag2") {
    kind = eikonal::SolverKind::semi_lagrangian(2);
  } else if (name == "lie") {
    kind = eikonal::SolverKind::cole_hopf_lie(delta_log);
  } else if (name == "strang") {
    kind = eikonal::SolverKind::cole_hopf_strang(delta_log);
  } else {
    throw UsageError("unknown eikonal solver: " + name);
  }
  kind.delta_log = delta_log;
  return kind;
}

namespace {

struct StepPlan {
  long full = 0;
  double rem = 0.0;
};

StepPlan plan_steps(double span, double h) {
  if (!(h > 0.0)) throw StructuralError("time step must be positive");
  if (span < -1e-12) throw StructuralError("negative time span");
  StepPlan p;
  p.full = static_cast<long>(std::floor(span / h + 1e-9));
  p.rem = span - p.full * h;
  if (p.rem <= 1e-12 * std::max(span, h)) p.rem = 0.0;
  return p;
}

RunOutput run_core(const RunSpec& spec, const StateSnapshot* start,
                   const gpe::ResourceLimits& limits) {
  const Grid g = make_grid(spec.nx);
  const bool wave = spec.scheme == Scheme::strang_gpe;

  double t0 = 0.0;
  wkb::State st;
  gpe::WaveFunction w{ComplexField(), spec.eps};
  if (start) {
    if (start->grid().n != spec.nx)
      throw StructuralError("snapshot grid does not match the run");
    if (start->is_wave() != wave)
      throw StructuralError("snapshot layout does not match the scheme");
    t0 = start->tf;
    if (wave)
      w.psi = start->psi;
    else
      st = wkb::State{start->S, start->A};
  } else {
    const InitialData data = make_initial_data(spec.data_id);
    if (wave)
      w = gpe::wkb_to_psi(initial_wkb_state(data, g), spec.eps);
    else
      st = initial_wkb_state(data, g);
  }

  const StepPlan plan = plan_steps(spec.tf - t0, spec.h);
  limits.check(spec.nx, plan.full + (plan.rem > 0.0 ? 1 : 0));

  wkb::SimParams p = spec.params;
  p.eps = spec.eps;

  auto do_step = [&](double hh) {
    p.h = hh;
    switch (spec.scheme) {
      case Scheme::scheme1: st = wkb::scheme1_step(std::move(st), p); break;
      case Scheme::scheme2: st = wkb::scheme2_step(std::move(st), p); break;
      case Scheme::scheme4:
        st = high_order::scheme4_step(std::move(st), p);
        break;
      case Scheme::strang_gpe: w = gpe::strang_step(std::move(w), hh); break;
    }
  };

  RunOutput out;
  double last_recorded = t0 - 1.0;
  auto record = [&](double t) {
    ObservableRow r;
    r.t = t;
    if (wave) {
      r.obs = diag::observables_psi(w);
      r.l2 = std::sqrt(r.obs.mass);
    } else {
      r.obs = diag::observables_wkb(st, spec.eps);
      r.l2 = wkb::amplitude_l2(st);
    }
    out.series.push_back(r);
    last_recorded = t;
  };

  record(t0);
  for (long i = 0; i < plan.full; ++i) {
    do_step(spec.h);
    if (spec.stride > 0 && (i + 1) % spec.stride == 0)
      record(t0 + (i + 1) * spec.h);
  }
  if (plan.rem > 0.0) do_step(plan.rem);
  if (last_recorded != spec.tf) record(spec.tf);

  StateSnapshot& snap = out.final_state;
  snap.kind = scheme_name(spec.scheme);
  snap.eps = spec.eps;
  snap.tf = spec.tf;
  snap.complex_S = spec.scheme == Scheme::scheme4;
  if (wave)
    snap.psi = std::move(w.psi);
  else {
    snap.S = std::move(st.S);
    snap.A = std::move(st.A);
  }
  return out;
}

std::string sanitized_hex(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%a", v);
  std::string s(buf);
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return s;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RunOutput run_single(const RunSpec& spec, const gpe::ResourceLimits& limits) {
  return run_core(spec, nullptr, limits);
}

RunOutput run_single_from(const RunSpec& spec, const StateSnapshot& start,
                          const gpe::ResourceLimits& limits) {
  return run_core(spec, &start, limits);
}

StateSnapshot resolve_reference(const ReferenceSpec& ref, Scheme scheme,
                                double eps, double tf,
                                const std::string& data_id,
                                const wkb::SimParams& params,
                                const gpe::ResourceLimits& limits) {
  if (ref.nt < 1) throw UsageError("reference needs nt >= 1");

  auto generate = [&]() -> StateSnapshot {
    if (ref.kind == "self") {
      RunSpec rs;
      rs.scheme = scheme;
      rs.eps = eps;
      rs.nx = ref.nx;
      rs.h = tf / ref.nt;
      rs.tf = tf;
      rs.data_id = data_id;
      rs.params = params;
      return run_single(rs, limits).final_state;
    }
    gpe::ReferenceRequest req;
    req.kind = ref.kind;
    req.eps = eps;
    req.tf = tf;
    req.nx = ref.nx;
    req.nt = ref.nt;
    req.data_id = data_id;
    req.params = params;
    return gpe::generate_reference(req, limits);
  };

  if (ref.cache_dir.empty()) return generate();

  namespace fs = std::filesystem;
  fs::create_directories(ref.cache_dir);
  const std::string name = "ref_" + ref.kind + "_" +
                           (ref.kind == "self" ? scheme_name(scheme) + "_" : "") +
                           "nx" + std::to_string(ref.nx) + "_nt" +
                           std::to_string(ref.nt) + "_eps" +
                           sanitized_hex(eps) + "_tf" + sanitized_hex(tf) +
                           ".snap";
  const fs::path path = fs::path(ref.cache_dir) / name;
  if (fs::exists(path)) {
    StateSnapshot s = load_snapshot(path.string());
    if (s.grid().n == ref.nx && s.eps == eps && s.tf == tf) return s;
    throw StructuralError("cached reference does not match: " + path.string());
  }
  StateSnapshot s = generate();
  save_snapshot(s, path.string());
  return s;
}

void SweepConfig::normalize() {
  if (!eps_list_given && eps_list.empty())
    for (int k = 0; k <= 12; k += 2) eps_list.push_back(std::ldexp(1.0, -k));
  if (!(tf > 0.0)) throw UsageError("tf must be positive");

  const int time_axes = (!nt_list.empty() ? 1 : 0) + (!h_list.empty() ? 1 : 0);
  if (time_axes > 1) throw UsageError("give either nt_list or h_list");
  const bool has_time = time_axes == 1;
  const bool has_space = !nx_list.empty();
  if (has_time == has_space)
    throw UsageError("exactly one sweep axis: a time list or nx_list");
  if (has_space && nt <= 0 && !(h > 0.0))
    throw UsageError("an nx sweep needs a fixed nt or h");
  if (has_time && nx < 4) throw UsageError("a time sweep needs a fixed nx");

  if (scheme == Scheme::strang_gpe)
    for (double e : eps_list)
      if (!(e > 0.0))
        throw UsageError("the direct scheme requires eps > 0 everywhere");
  for (double e : eps_list)
    if (e < 0.0 || e > params.eps_max)
      throw UsageError("eps outside [0, eps_max]");

  if (!metrics_given) {
    metrics = diag::MetricRequest{};
    metrics.rho = true;
    metrics.psi = scheme == Scheme::strang_gpe;
    metrics.sa = scheme != Scheme::strang_gpe;
  }
}

namespace {

struct InstanceKey {
  double h = 0.0;
  long nt = 0;
  int nx = 0;
  double fit_x = 0.0;  // h for time sweeps, dx for space sweeps
};

std::vector<InstanceKey> sweep_axis(const SweepConfig& c) {
  std::vector<InstanceKey> keys;
  if (!c.nt_list.empty()) {
    for (long nt : c.nt_list) {
      if (nt < 1) throw UsageError("nt values must be >= 1");
      const double h = c.tf / nt;
      keys.push_back({h, nt, c.nx, h});
    }
  } else if (!c.h_list.empty()) {
    for (double h : c.h_list) {
      if (!(h > 0.0)) throw UsageError("h values must be positive");
      keys.push_back({h, std::lround(c.tf / h), c.nx, h});
    }
  } else {
    double h = c.h;
    long nt = c.nt;
    if (nt > 0) h = c.tf / nt;
    else nt = std::lround(c.tf / h);
    for (int nx : c.nx_list) {
      if (nx < 4) throw UsageError("nx values must be >= 4");
      keys.push_back({h, nt, nx, kTwoPi / nx});
    }
  }
  return keys;
}

std::vector<std::string> requested_metric_names(
    const diag::MetricRequest& m) {
  std::vector<std::string> names;
  if (m.rho) names.push_back("rho");
  if (m.psi) names.push_back("psi");
  if (m.sa) names.push_back("sa");
  return names;
}

double metric_value(const diag::ErrorMetrics& em, const std::string& name) {
  if (name == "rho") return em.rho.value_or(std::nan(""));
  if (name == "psi") return em.psi.value_or(std::nan(""));
  return em.sa.value_or(std::nan(""));
}

}  // namespace

std::vector<ErrorRecord> run_sweep(const SweepConfig& cfg,
                                   const gpe::ResourceLimits& limits) {
  SweepConfig c = cfg;
  c.normalize();

  const std::vector<InstanceKey> keys = sweep_axis(c);
  const std::vector<std::string> metric_names =
      requested_metric_names(c.metrics);
  const int ne = static_cast<int>(c.eps_list.size());
  const int nk = static_cast<int>(keys.size());
  const std::string sname = scheme_name(c.scheme);
  const int width =
      c.width > 0 ? c.width : std::max(1, omp_get_max_threads());

  // references, one per eps
  std::vector<std::optional<StateSnapshot>> refs(ne);
  std::vector<std::string> ref_status(ne, "ok");
#pragma omp parallel for schedule(dynamic) num_threads(width)
  for (int ei = 0; ei < ne; ++ei) {
    try {
      refs[ei] = resolve_reference(c.ref, c.scheme, c.eps_list[ei], c.tf,
                                   c.data_id, c.params, limits);
    } catch (const Error& e) {
      ref_status[ei] = e.code();
    }
  }

  // instances
  std::vector<std::vector<ErrorRecord>> rows(
      static_cast<size_t>(ne) * nk);
#pragma omp parallel for schedule(dynamic) num_threads(width) collapse(2)
  for (int ei = 0; ei < ne; ++ei) {
    for (int ki = 0; ki < nk; ++ki) {
      const InstanceKey& key = keys[ki];
      ErrorRecord base;
      base.scheme = sname;
      base.eps = c.eps_list[ei];
      base.tf = c.tf;
      base.nx = key.nx;
      base.nt = key.nt;
      base.h = key.h;
      std::vector<ErrorRecord>& out = rows[ei * nk + ki];
      std::string status = ref_status[ei];
      diag::ErrorMetrics em;
      if (status == "ok") {
        try {
          RunSpec spec;
          spec.scheme = c.scheme;
          spec.eps = c.eps_list[ei];
          spec.nx = key.nx;
          spec.h = key.h;
          spec.tf = c.tf;
          spec.data_id = c.data_id;
          spec.params = c.params;
          const RunOutput run = run_single(spec, limits);
          em = diag::compute_errors(run.final_state, *refs[ei], c.metrics);
        } catch (const Error& e) {
          status = e.code();
        }
      }
      for (const std::string& m : metric_names) {
        ErrorRecord r = base;
        r.metric = m;
        r.value = status == "ok" ? metric_value(em, m) : std::nan("");
        r.status = status;
        out.push_back(r);
      }
    }
  }

  std::vector<ErrorRecord> records;
  for (const auto& chunk : rows)
    records.insert(records.end(), chunk.begin(), chunk.end());

  // slope-fit summary rows per (eps, metric)
  for (int ei = 0; ei < ne; ++ei) {
    for (const std::string& m : metric_names) {
      std::vector<double> xs, ys;
      for (int ki = 0; ki < nk; ++ki) {
        for (const ErrorRecord& r : rows[ei * nk + ki]) {
          if (r.metric == m && r.status == "ok" && std::isfinite(r.value)) {
            xs.push_back(keys[ki].fit_x);
            ys.push_back(r.value);
          }
        }
      }
      const OrderFit fit = fit_loglog(xs, ys, c.fit_floor);
      double center = 0.0;
      if (fit.valid) {
        double acc = 0.0;
        int cnt = 0;
        for (size_t i = 0; i < ys.size(); ++i)
          if (ys[i] > c.fit_floor && std::isfinite(ys[i])) {
            acc += std::log(xs[i]);
            ++cnt;
          }
        center = std::exp(acc / cnt);
      }
      ErrorRecord r;
      r.scheme = sname;
      r.eps = c.eps_list[ei];
      r.tf = c.tf;
      r.nx = c.nx;
      r.nt = 0;
      r.h = 0.0;
      r.metric = "order:" + m;
      r.value = fit.valid ? fit.slope : std::nan("");
      r.status = fit.valid ? "fit" : "fit_invalid";
      records.push_back(r);
      r.metric = "const:" + m;
      r.h = center;
      r.value = fit.valid ? fit.value_at(center) : std::nan("");
      records.push_back(r);
    }
  }
  return records;
}

std::string csv_header() { return "scheme,eps,Tf,Nx,Nt,h,metric,value,status\n"; }

std::string to_csv(std::span<const ErrorRecord> records) {
  std::string out = csv_header();
  char buf[256];
  for (const ErrorRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%s,%d,%ld,%s,%s,%s,%s\n",
                  r.scheme.c_str(), format_real(r.eps).c_str(),
                  format_real(r.tf).c_str(), r.nx, r.nt,
                  format_real(r.h).c_str(), r.metric.c_str(),
                  format_real(r.value).c_str(), r.status.c_str());
    out += buf;
  }
  return out;
}

SweepConfig sweep_config_from(const KeyValues& kv) {
  SweepConfig c;
  c.scheme = parse_scheme(kv.get_string("scheme", "scheme2"));
  if (kv.has("eps_list")) {
    c.eps_list = kv.get_real_list("eps_list");
    c.eps_list_given = true;
  }
  c.nt_list = kv.get_int_list("nt_list");
  c.h_list = kv.get_real_list("h_list");
  for (long nx : kv.get_int_list("nx_list"))
    c.nx_list.push_back(static_cast<int>(nx));
  c.nx = static_cast<int>(kv.get_int("nx", c.nx));
  c.nt = kv.get_int("nt", c.nt);
  c.h = kv.get_real("h", c.h);
  c.tf = kv.get_real("tf", c.tf);
  c.data_id = kv.get_string("data", c.data_id);
  c.params.eik = parse_eikonal(
      kv.get_string("eikonal", "semilag"),
      static_cast<int>(kv.get_int("eikonal_depth", 1)),
      kv.get_real("delta_log", 0.1));
  const std::string e4 = kv.get_string("eikonal4", "semilag4");
  if (e4 == "semilag4")
    c.params.eik4 = wkb::HighOrderEikonal::semi_lagrangian4;
  else if (e4 == "yoshida_ch")
    c.params.eik4 = wkb::HighOrderEikonal::yoshida_cole_hopf;
  else
    throw UsageError("unknown eikonal4 choice: " + e4);
  c.params.dealias = kv.get_bool("dealias", false);
  c.params.interp_exact = kv.get_bool("interp_exact", false);
  c.params.eps_max = kv.get_real("eps_max", 1.0);
  c.ref.kind = kv.get_string("ref_kind", "wkb4");
  c.ref.nx = static_cast<int>(kv.get_int("ref_nx", 256));
  c.ref.nt = kv.get_int("ref_nt", 8192);
  c.ref.cache_dir = kv.get_string("ref_dir", "");
  c.width = static_cast<int>(kv.get_int("width", 0));
  if (kv.has("metrics")) {
    c.metrics = diag::MetricRequest{false, false, false, false};
    std::string ms = kv.get_string("metrics", "");
    c.metrics_given = true;
    size_t pos = 0;
    while (pos != std::string::npos) {
      const size_t next = ms.find(',', pos);
      const std::string tok = ms.substr(
          pos, next == std::string::npos ? std::string::npos : next - pos);
      if (tok == "rho") c.metrics.rho = true;
      else if (tok == "psi") c.metrics.psi = true;
      else if (tok == "sa") c.metrics.sa = true;
      else if (!tok.empty()) throw UsageError("unknown metric: " + tok);
      pos = next == std::string::npos ? next : next + 1;
    }
  }
  c.metrics.include_imag_s = kv.get_bool("include_imag_s", false);
  c.fit_floor = kv.get_real("fit_floor", 0.0);
  return c;
}

}  // namespace uasc::harness
