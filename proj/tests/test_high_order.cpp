#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "uasc/high_order.hpp"
#include "uasc/initial_data.hpp"

using namespace uasc;
using namespace uasc::high_order;
using testutil::max_diff;

namespace {

wkb::State paper_state(const Grid& g) {
  return initial_wkb_state(make_initial_data("paper"), g);
}

double state_dist(const wkb::State& a, const wkb::State& b) {
  return std::max(max_diff(a.S, b.S), max_diff(a.A, b.A));
}

}  // namespace

TEST_CASE("composition coefficients") {
  const auto& cc = composition_coefficients();

  SUBCASE("alpha values and sums") {
    CHECK(cc.alpha[0] == doctest::Approx(0.675603595979829).epsilon(1e-14));
    CHECK(cc.alpha[3] == doctest::Approx(-1.702414383919315).epsilon(1e-14));
    CHECK(cc.alpha[0] == cc.alpha[6]);
    CHECK(cc.alpha[1] == cc.alpha[5]);
    CHECK(cc.alpha[2] == cc.alpha[4]);
    const double odd = cc.alpha[0] + cc.alpha[2] + cc.alpha[4] + cc.alpha[6];
    const double even = cc.alpha[1] + cc.alpha[3] + cc.alpha[5];
    CHECK(std::abs(odd - 1.0) < 1e-15);
    CHECK(std::abs(even - 1.0) < 1e-15);
  }

  SUBCASE("beta table satisfies its identities at long-double precision") {
    for (int j = 0; j < 9; ++j) {
      CHECK(kBetaRe[j] == kBetaRe[8 - j]);
      CHECK(kBetaIm[j] == kBetaIm[8 - j]);
    }
    // odd entries drive the irreversible flow and have positive real part;
    // even entries are real
    for (int j = 0; j < 9; j += 2) CHECK(kBetaRe[j] > 0.0L);
    for (int j = 1; j < 9; j += 2) CHECK(kBetaIm[j] == 0.0L);

    const long double b4_re = 0.5L - kBetaRe[1];
    CHECK(std::abs(static_cast<double>(b4_re - kBetaRe[3])) < 1e-18);

    const long double b5_re = 1.0L - 2.0L * kBetaRe[0] - 2.0L * kBetaRe[2];
    const long double b5_im = -2.0L * kBetaIm[0] - 2.0L * kBetaIm[2];
    CHECK(std::abs(static_cast<double>(b5_re - kBetaRe[4])) < 1e-18);
    CHECK(std::abs(static_cast<double>(b5_im - kBetaIm[4])) < 1e-18);

    long double odd_re = 0.0L, odd_im = 0.0L, even_re = 0.0L;
    for (int j = 0; j < 9; j += 2) {
      odd_re += kBetaRe[j];
      odd_im += kBetaIm[j];
    }
    for (int j = 1; j < 9; j += 2) even_re += kBetaRe[j];
    CHECK(std::abs(static_cast<double>(odd_re - 1.0L)) < 1e-18);
    CHECK(std::abs(static_cast<double>(odd_im)) < 1e-18);
    CHECK(std::abs(static_cast<double>(even_re - 1.0L)) < 1e-18);

    for (int j = 0; j < 9; ++j) {
      CHECK(cc.beta[j].real() == static_cast<double>(kBetaRe[j]));
      CHECK(cc.beta[j].imag() == static_cast<double>(kBetaIm[j]));
    }
  }
}

TEST_CASE("Pauli rotation") {
  const Grid g = make_grid(64);

  SUBCASE("real amplitude maps to (a, ia)/sqrt(2)") {
    wkb::State st{ComplexField(g),
                  ComplexField::sampled(g, [](double x) {
                    return cplx(std::sin(x), 0.0);
                  })};
    const VState v = to_vstate(st);
    for (int j = 0; j < g.n; ++j) {
      const double a = std::sin(g.node(j));
      CHECK(std::abs(v.v1[j] - cplx(a / std::sqrt(2.0), 0.0)) < 1e-15);
      CHECK(std::abs(v.v2[j] - cplx(0.0, a / std::sqrt(2.0))) < 1e-15);
    }
  }
  SUBCASE("involution") {
    wkb::State st{testutil::random_bandlimited(g, 20, 8),
                  testutil::random_bandlimited(g, 20, 9)};
    const wkb::State back = from_vstate(to_vstate(st));
    CHECK(state_dist(back, st) < 1e-13);
  }
  SUBCASE("product identity -2i v1 v2 = A1^2 + A2^2") {
    wkb::State st{ComplexField(g),
                  ComplexField::sampled(g, [](double x) {
                    return cplx(std::sin(x), 0.0);
                  })};
    const VState v = to_vstate(st);
    for (int j = 0; j < g.n; ++j) {
      const double a = std::sin(g.node(j));
      const cplx prod = cplx(0.0, -2.0) * v.v1[j] * v.v2[j];
      CHECK(std::abs(prod - cplx(a * a, 0.0)) < 1e-12);
    }
  }
  SUBCASE("matrix identity P sigma2 P = sigma3") {
    const cplx I(0.0, 1.0);
    const cplx P[2][2] = {{1.0 / std::sqrt(2.0), -I / std::sqrt(2.0)},
                          {I / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}};
    const cplx s2[2][2] = {{0.0, -I}, {I, 0.0}};
    cplx tmp[2][2] = {}, res[2][2] = {};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        for (int k = 0; k < 2; ++k) tmp[r][c] += P[r][k] * s2[k][c];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        for (int k = 0; k < 2; ++k) res[r][c] += tmp[r][k] * P[k][c];
    CHECK(std::abs(res[0][0] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(res[1][1] - cplx(-1.0)) < 1e-15);
    CHECK(std::abs(res[0][1]) < 1e-15);
    CHECK(std::abs(res[1][0]) < 1e-15);
  }
}

TEST_CASE("tilde flows") {
  const Grid g = make_grid(64);

  SUBCASE("tflow2 closed forms") {
    VState v{ComplexField(g),
             ComplexField::sampled(g, [](double x) { return cplx(std::sin(x), 0.0); }),
             ComplexField(g)};
    const ComplexField v1_0 = v.v1;
    tflow2(v, 0.0, 0.5);
    CHECK(max_diff(v.v1, v1_0) == 0.0);

    const double tau = 0.23;
    tflow2(v, tau, 1.0);  // (eps + 1)/2 = 1 at k^2 = 1
    ComplexField want(g);
    for (int j = 0; j < g.n; ++j)
      want[j] = std::polar(1.0, tau) * v1_0[j];
    CHECK(max_diff(v.v1, want) < 1e-13);
  }
  SUBCASE("tflow2 at eps = 0 moves both components identically") {
    const ComplexField f = testutil::random_bandlimited(g, 15, 12);
    VState v{ComplexField(g), f, f};
    tflow2(v, 0.11, 0.0);
    CHECK(max_diff(v.v1, v.v2) < 1e-14);
  }
  SUBCASE("tflow3 matches the density coupling and reverses") {
    wkb::State st{ComplexField(g),
                  ComplexField::sampled(g, [](double x) {
                    return cplx(std::sin(x), 0.0);
                  })};
    VState v = to_vstate(st);
    tflow3(v, 0.1);
    for (int j = 0; j < g.n; ++j) {
      const double s = std::sin(g.node(j));
      CHECK(std::abs(v.S[j] - cplx(-0.1 * s * s, 0.0)) < 1e-13);
    }
    tflow3(v, -0.1);
    CHECK(max_abs(v.S) < 1e-15);
  }
  SUBCASE("tflow4 closed form and guards") {
    const double eps = 0.5, tau = 0.2;
    VState v{ComplexField::sampled(g, [](double x) { return cplx(std::cos(x), 0.0); }),
             ComplexField(g, cplx(1.0, 0.0)), ComplexField(g, cplx(0.0, 1.0))};
    const VState before = v;
    tflow4(v, tau, 0.0);
    CHECK(max_diff(v.S, before.S) == 0.0);

    tflow4(v, tau, eps);
    const double decay = std::exp(-eps * eps * tau);
    for (int j = 0; j < g.n; ++j) {
      const double d = (decay - 1.0) * std::cos(g.node(j));
      CHECK(std::abs(v.v1[j] - std::exp(cplx(0.0, d / eps))) < 1e-13);
      CHECK(std::abs(v.v2[j] - cplx(0.0, 1.0) * std::exp(cplx(0.0, -d / eps))) <
            1e-13);
    }
    CHECK_THROWS_AS(tflow4(v, cplx(-0.1, 0.0), eps), IrreversibleStepError);
  }
  SUBCASE("tflow1 trivial cases") {
    VState v{ComplexField(g, cplx(0.7, 0.0)), ComplexField(g), ComplexField(g)};
    tflow1(v, 0.05, wkb::HighOrderEikonal::semi_lagrangian4, 0.5);
    CHECK(max_diff(v.S, ComplexField(g, cplx(0.7, 0.0))) < 1e-13);
    CHECK(max_abs(v.v1) < 1e-14);
    CHECK(max_abs(v.v2) < 1e-14);
  }
  SUBCASE("tflow1 agrees with flow1 through the rotation on real states") {
    wkb::State st = paper_state(g);
    const double tau = 1e-3;
    VState v = to_vstate(st);
    tflow1(v, tau, wkb::HighOrderEikonal::semi_lagrangian4, 0.25);
    const wkb::State via_v = from_vstate(v);

    wkb::State direct = st;
    wkb::flow1(direct, tau, eikonal::SolverKind::semi_lagrangian(2));
    CHECK(state_dist(via_v, direct) < 1e-10);
  }
}

TEST_CASE("yoshida composition of commuting flows is exact") {
  const Grid g = make_grid(16);
  ComplexField u(g, cplx(1.0, 0.0));
  const double a = 0.31, b = -0.12, h = 0.7;
  yoshida_triple(
      [&](double tau) {
        for (int j = 0; j < g.n; ++j) u[j] *= std::exp(a * tau);
      },
      [&](double tau) {
        for (int j = 0; j < g.n; ++j) u[j] *= std::exp(b * tau);
      },
      h);
  const cplx want = std::exp((a + b) * h);
  for (int j = 0; j < g.n; ++j) CHECK(std::abs(u[j] - want) < 1e-12);
}

TEST_CASE("scheme4 stepping") {
  const Grid g = make_grid(64);
  const double tf = 0.1;

  SUBCASE("local error is fifth order") {
    for (double eps : {1.0, std::ldexp(1.0, -4)}) {
      std::vector<double> hs, es;
      for (int div : {1, 2, 4}) {
        const double h = tf / div;
        wkb::SimParams p;
        p.eps = eps;
        p.h = h;
        const wkb::State one = scheme4_step(paper_state(g), p);
        wkb::SimParams pf = p;
        pf.h = h / 64;
        wkb::State fine = paper_state(g);
        for (int i = 0; i < 64; ++i) fine = scheme4_step(std::move(fine), pf);
        double num = 0.0, den = 0.0;
        for (int j = 0; j < g.n; ++j) {
          num += std::norm(cplx(one.S[j].real() - fine.S[j].real(), 0.0)) +
                 std::norm(one.A[j] - fine.A[j]);
          den += std::norm(fine.S[j]) + std::norm(fine.A[j]);
        }
        hs.push_back(h);
        es.push_back(std::sqrt(num / den));
      }
      const OrderFit fit = fit_loglog(hs, es, 1e-13);
      CHECK(fit.valid);
      CHECK(fit.slope == doctest::Approx(5.0).epsilon(0.08));
    }
  }
  SUBCASE("phase goes complex but the step stays finite") {
    wkb::SimParams p;
    p.eps = std::ldexp(1.0, -2);
    p.h = tf / 16;
    wkb::State st = paper_state(g);
    for (int i = 0; i < 16; ++i) st = scheme4_step(std::move(st), p);
    CHECK(max_abs_imag(st.S) > 0.0);
    CHECK(max_abs_imag(st.S) < 1e-4);
    CHECK(std::isfinite(max_abs(st.A)));
  }
  SUBCASE("amplitude norm is conserved at eps = 0") {
    wkb::SimParams p;
    p.eps = 0.0;
    p.h = 1e-3;
    wkb::State st = paper_state(g);
    const double l0 = wkb::amplitude_l2(st);
    for (int i = 0; i < 100; ++i) st = scheme4_step(std::move(st), p);
    CHECK(std::abs(wkb::amplitude_l2(st) - l0) / l0 < 1e-12);
  }
  SUBCASE("per-step norm drift shrinks like h^5") {
    wkb::SimParams p;
    p.eps = std::ldexp(1.0, -2);
    auto drift = [&](double h) {
      p.h = h;
      wkb::State st = paper_state(g);
      const double l0 = wkb::amplitude_l2(st);
      st = scheme4_step(std::move(st), p);
      return std::abs(wkb::amplitude_l2(st) - l0) / l0;
    };
    const double d1 = drift(0.05);
    const double d2 = drift(0.025);
    CHECK(d1 / d2 > 16.0);
    CHECK(d1 / d2 < 64.0);
  }
}
