#pragma once

#include <span>
#include <string>
#include <vector>

#include "uasc/config.hpp"
#include "uasc/diagnostics.hpp"
#include "uasc/fit.hpp"
#include "uasc/gpe.hpp"
#include "uasc/high_order.hpp"
#include "uasc/initial_data.hpp"
#include "uasc/snapshot.hpp"

namespace uasc::harness {

enum class Scheme { scheme1, scheme2, scheme4, strang_gpe };

std::string scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);

struct RunSpec {
  Scheme scheme = Scheme::scheme2;
  double eps = 1.0;
  int nx = 128;
  double h = 1e-3;
  double tf = 0.1;
  std::string data_id = "paper";
  wkb::SimParams params;
  int stride = 0;  // record observables every `stride` steps (0: ends only)
};

struct ObservableRow {
  double t = 0.0;
  diag::Observables obs;
  double l2 = 0.0;  // discrete L2 norm of A (or psi)
};

struct RunOutput {
  StateSnapshot final_state;
  std::vector<ObservableRow> series;
};

/// Steps the chosen scheme from t = 0 to tf with fixed h (a shorter last
/// step absorbs any remainder).
RunOutput run_single(const RunSpec& spec, const gpe::ResourceLimits& limits);

/// Same, resuming from a snapshot taken at an earlier time of the same run.
RunOutput run_single_from(const RunSpec& spec, const StateSnapshot& start,
                          const gpe::ResourceLimits& limits);

struct ReferenceSpec {
  std::string kind = "wkb4";  // "wkb4", "gpe" or "self"
  int nx = 256;
  long nt = 8192;  // h = tf / nt
  std::string cache_dir;
};

struct SweepConfig {
  Scheme scheme = Scheme::scheme2;
  std::vector<double> eps_list;
  bool eps_list_given = false;
  std::vector<long> nt_list;
  std::vector<double> h_list;
  std::vector<int> nx_list;
  int nx = 128;
  long nt = 0;
  double h = 0.0;
  double tf = 0.1;
  std::string data_id = "paper";
  wkb::SimParams params;
  ReferenceSpec ref;
  int width = 0;  // sweep parallelism (0: hardware)
  diag::MetricRequest metrics;
  bool metrics_given = false;
  double fit_floor = 0.0;

  /// Applies defaults and checks the sweep invariants (exactly one axis,
  /// positive tf, eps admissible for the scheme).
  void normalize();
};

struct ErrorRecord {
  std::string scheme;
  double eps = 0.0;
  double tf = 0.0;
  int nx = 0;
  long nt = 0;
  double h = 0.0;
  std::string metric;
  double value = 0.0;
  std::string status;
};

/// One row per (eps, swept value, metric), deterministic order, plus
/// per-(eps, metric) slope-fit summary rows. Instance failures become rows
/// with status != ok; the sweep continues.
std::vector<ErrorRecord> run_sweep(const SweepConfig& cfg,
                                   const gpe::ResourceLimits& limits);

std::string csv_header();
std::string to_csv(std::span<const ErrorRecord> records);

/// Builds a sweep configuration from flat key-value entries.
SweepConfig sweep_config_from(const KeyValues& kv);

/// Resolves one reference snapshot (generating or loading from cache).
StateSnapshot resolve_reference(const ReferenceSpec& ref, Scheme scheme,
                                double eps, double tf,
                                const std::string& data_id,
                                const wkb::SimParams& params,
                                const gpe::ResourceLimits& limits);

/// Eikonal solver selection shared by config and CLI.
eikonal::SolverKind parse_eikonal(const std::string& name, int depth,
                                  double delta_log);

}  // namespace uasc::harness
