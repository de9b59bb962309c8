#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "uasc/diagnostics.hpp"
#include "uasc/initial_data.hpp"

using namespace uasc;
using namespace uasc::diag;

TEST_CASE("discrete norms") {
  const Grid g = make_grid(64);
  const auto [l1_one, l2_one] = discrete_norms(RealField(g, 1.0));
  CHECK(l1_one == doctest::Approx(kTwoPi).epsilon(1e-14));
  CHECK(l2_one == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-14));

  const auto [l1_zero, l2_zero] = discrete_norms(RealField(g));
  CHECK(l1_zero == 0.0);
  CHECK(l2_zero == 0.0);

  const Grid g128 = make_grid(128);
  const RealField s =
      RealField::sampled(g128, [](double x) { return std::sin(x); });
  CHECK(std::abs(discrete_norms(s).second - std::sqrt(std::numbers::pi)) <
        1e-12);
}

TEST_CASE("wave-function observables") {
  const Grid g = make_grid(64);

  SUBCASE("real constant") {
    const double a = 0.7, eps = 0.3;
    const Observables o = observables_psi({ComplexField(g, cplx(a, 0.0)), eps});
    CHECK(o.mass == doctest::Approx(kTwoPi * a * a).epsilon(1e-13));
    CHECK(o.energy == doctest::Approx(kTwoPi * a * a * a * a).epsilon(1e-13));
    CHECK(std::abs(o.momentum) < 1e-13);
  }
  SUBCASE("plane wave momentum") {
    const double eps = 0.25;
    const ComplexField pw =
        ComplexField::sampled(g, [](double x) { return std::polar(1.0, x); });
    const Observables o = observables_psi({pw, eps});
    CHECK(o.momentum == doctest::Approx(eps * kTwoPi).epsilon(1e-12));
  }
}

TEST_CASE("phase-amplitude observables") {
  const Grid g = make_grid(128);

  SUBCASE("constants") {
    const double a = 1.3;
    wkb::State st{ComplexField(g, cplx(0.4, 0.0)), ComplexField(g, cplx(a, 0.0))};
    const Observables o = observables_wkb(st, 0.5);
    CHECK(o.mass == doctest::Approx(kTwoPi * a * a).epsilon(1e-13));
    CHECK(o.energy == doctest::Approx(kTwoPi * a * a * a * a).epsilon(1e-13));
    CHECK(std::abs(o.momentum) < 1e-13);
  }
  SUBCASE("unit amplitude with oscillating phase has zero mean momentum") {
    wkb::State st{
        ComplexField::sampled(g, [](double x) { return cplx(std::sin(x), 0.0); }),
        ComplexField(g, cplx(1.0, 0.0))};
    CHECK(std::abs(observables_wkb(st, 0.5).momentum) < 1e-12);
  }
  SUBCASE("agrees with the reconstructed wave function") {
    const double eps = std::ldexp(1.0, -3);
    const wkb::State st =
        initial_wkb_state(make_initial_data("paper"), g);
    const Observables a = observables_wkb(st, eps);
    const Observables b = observables_psi(gpe::wkb_to_psi(st, eps));
    CHECK(a.mass == doctest::Approx(b.mass).epsilon(1e-10));
    CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-10));
    CHECK(std::abs(a.momentum - b.momentum) < 1e-10);
  }
}

namespace {

StateSnapshot wkb_snap(const Grid& g, const ComplexField& s,
                       const ComplexField& a) {
  StateSnapshot out;
  out.kind = "scheme2";
  out.eps = 0.5;
  out.tf = 0.1;
  out.S = s;
  out.A = a;
  return out;
}

}  // namespace

TEST_CASE("error metrics") {
  const Grid g = make_grid(64);
  const ComplexField s0 = to_complex(testutil::sin_half(g));
  const ComplexField a0 =
      ComplexField::sampled(g, [](double x) { return cplx(std::sin(x), 0.0); });

  SUBCASE("identical states give zeros") {
    const StateSnapshot s = wkb_snap(g, s0, a0);
    MetricRequest mr;
    mr.sa = true;
    const ErrorMetrics em = compute_errors(s, s, mr);
    CHECK(*em.rho == 0.0);
    CHECK(*em.sa == 0.0);
  }
  SUBCASE("constant density offset") {
    const double delta = 1e-3;
    const StateSnapshot ref = wkb_snap(g, s0, ComplexField(g, cplx(1.0, 0.0)));
    const StateSnapshot cand =
        wkb_snap(g, s0, ComplexField(g, std::sqrt(1.0 + delta)));
    MetricRequest mr;
    const ErrorMetrics em = compute_errors(cand, ref, mr);
    CHECK(*em.rho == doctest::Approx(delta).epsilon(1e-10));
  }
  SUBCASE("amplitude perturbation formula") {
    const double delta = 1e-4;
    ComplexField a1 = a0;
    for (int j = 0; j < g.n; ++j)
      a1[j] += delta * std::sin(g.node(j));
    const StateSnapshot ref = wkb_snap(g, s0, a0);
    const StateSnapshot cand = wkb_snap(g, s0, a1);
    MetricRequest mr;
    mr.rho = false;
    mr.sa = true;
    const double norm_sin = discrete_norms(
        RealField::sampled(g, [](double x) { return std::sin(x); })).second;
    const double norm_s = discrete_norms(real_part(s0)).second;
    const double norm_a = discrete_norms(a0).second;
    const double want =
        delta * norm_sin / std::sqrt(norm_s * norm_s + norm_a * norm_a);
    CHECK(*compute_errors(cand, ref, mr).sa ==
          doctest::Approx(want).epsilon(1e-10));
  }
  SUBCASE("metrics are scale invariant") {
    ComplexField s1 = s0, a1 = a0;
    for (int j = 0; j < g.n; ++j) {
      s1[j] += cplx(0.01 * std::cos(g.node(j)), 0.0);
      a1[j] *= 1.001;
    }
    const StateSnapshot ref = wkb_snap(g, s0, a0);
    const StateSnapshot cand = wkb_snap(g, s1, a1);
    StateSnapshot ref2 = ref, cand2 = cand;
    for (int j = 0; j < g.n; ++j) {
      ref2.S[j] *= 2.0;
      ref2.A[j] *= 2.0;
      cand2.S[j] *= 2.0;
      cand2.A[j] *= 2.0;
    }
    MetricRequest mr;
    mr.sa = true;
    const ErrorMetrics a = compute_errors(cand, ref, mr);
    const ErrorMetrics b = compute_errors(cand2, ref2, mr);
    CHECK(*a.rho == doctest::Approx(*b.rho).epsilon(1e-12));
    CHECK(*a.sa == doctest::Approx(*b.sa).epsilon(1e-12));
  }
  SUBCASE("zero-norm reference is rejected") {
    const StateSnapshot ref = wkb_snap(g, ComplexField(g), ComplexField(g));
    const StateSnapshot cand = wkb_snap(g, s0, a0);
    MetricRequest mr;
    CHECK_THROWS_AS(compute_errors(cand, ref, mr), UndefinedMetricError);
  }
  SUBCASE("layout mismatches are rejected") {
    const StateSnapshot ref = wkb_snap(g, s0, a0);
    StateSnapshot cand = ref;
    MetricRequest mr;
    mr.rho = false;
    mr.psi = true;
    CHECK_THROWS_AS(compute_errors(cand, ref, mr), UndefinedMetricError);
  }
  SUBCASE("finer references are restricted exactly") {
    const Grid fine = make_grid(256);
    const ComplexField sf = to_complex(testutil::sin_half(fine));
    const ComplexField af = ComplexField::sampled(
        fine, [](double x) { return cplx(std::sin(x), 0.0); });
    const StateSnapshot ref = wkb_snap(fine, sf, af);
    const StateSnapshot cand = wkb_snap(g, s0, a0);
    MetricRequest mr;
    mr.sa = true;
    const ErrorMetrics em = compute_errors(cand, ref, mr);
    CHECK(*em.rho < 1e-13);
    CHECK(*em.sa < 1e-13);

    CHECK_THROWS_AS(compute_errors(ref, cand, mr), StructuralError);
  }
  SUBCASE("imaginary phase slot is opt-in") {
    ComplexField s_imag = s0;
    for (int j = 0; j < g.n; ++j) s_imag[j] += cplx(0.0, 1e-3);
    const StateSnapshot ref = wkb_snap(g, s0, a0);
    const StateSnapshot cand = wkb_snap(g, s_imag, a0);
    MetricRequest mr;
    mr.rho = false;
    mr.sa = true;
    CHECK(*compute_errors(cand, ref, mr).sa == 0.0);
    mr.include_imag_s = true;
    CHECK(*compute_errors(cand, ref, mr).sa > 0.0);
  }
}
