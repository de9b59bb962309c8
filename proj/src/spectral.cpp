#include "uasc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace uasc {
namespace {

// Fixed work-unit sizes: results never depend on how chunks are assigned to
// threads, so serial and parallel execution are bit-identical.
constexpr int kChunk = 64;
constexpr int kAnchor = 16;  // modes per recurrence window
constexpr int kMaxSeries = 4;

double powi(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// (i k)^order
cplx ik_power(double k, int order) {
  const double kp = powi(k, order);
  switch (order & 3) {
    case 0: return cplx(kp, 0.0);
    case 1: return cplx(0.0, kp);
    case 2: return cplx(-kp, 0.0);
    default: return cplx(0.0, -kp);
  }
}

bool grid_has_mode(int n, int m) {
  const int lo = (n % 2 == 0) ? -n / 2 : -(n - 1) / 2;
  return m >= lo && m <= (n - 1) / 2;
}

void eval_chunk(const Grid& g, std::span<const std::span<const cplx>> spectra,
                const cplx* pts, int np,
                std::span<const std::span<cplx>> out, int offset,
                bool exact) {
  const int n = g.n;
  const int ns = static_cast<int>(spectra.size());
  const double scale = kTwoPi / g.length;
  const bool even = (n % 2) == 0;
  const int m_lo = even ? -n / 2 + 1 : -(n - 1) / 2;
  const int m_hi = (n - 1) / 2;

  double yr[kChunk], yi[kChunk];
  double zr[kChunk], zi[kChunk];
  double wr[kChunk], wi[kChunk];     // e^{i y}, the per-mode rotation
  double sr[kChunk], si[kChunk];     // e^{i kAnchor y}, the window rotation
  double br[kChunk], bi[kChunk];     // window base z at the current anchor
  double ar[kMaxSeries][kChunk], ai[kMaxSeries][kChunk];

  for (int p = 0; p < np; ++p) {
    yr[p] = scale * pts[p].real();
    yi[p] = scale * pts[p].imag();
  }
  for (int s = 0; s < ns; ++s)
    for (int p = 0; p < np; ++p) ar[s][p] = ai[s][p] = 0.0;

  if (!exact) {
    for (int p = 0; p < np; ++p) {
      const double mag = std::exp(-yi[p]);
      wr[p] = mag * std::cos(yr[p]);
      wi[p] = mag * std::sin(yr[p]);
      const double mag0 = std::exp(-m_lo * yi[p]);
      br[p] = mag0 * std::cos(m_lo * yr[p]);
      bi[p] = mag0 * std::sin(m_lo * yr[p]);
      zr[p] = br[p];
      zi[p] = bi[p];
      // w^kAnchor by repeated squaring; keeps the error of the anchor chain
      // bounded instead of drifting over the whole mode range
      double tr = wr[p], ti = wi[p];
      for (int q = 1; q < kAnchor; q *= 2) {
        const double rr = tr * tr - ti * ti;
        ti = 2.0 * tr * ti;
        tr = rr;
      }
      sr[p] = tr;
      si[p] = ti;
    }
  }

  for (int m = m_lo; m <= m_hi; ++m) {
    if (exact) {
      for (int p = 0; p < np; ++p) {
        const double mag = std::exp(-m * yi[p]);
        zr[p] = mag * std::cos(m * yr[p]);
        zi[p] = mag * std::sin(m * yr[p]);
      }
    } else if (m != m_lo && (m - m_lo) % kAnchor == 0) {
      for (int p = 0; p < np; ++p) {
        const double tr = br[p] * sr[p] - bi[p] * si[p];
        bi[p] = br[p] * si[p] + bi[p] * sr[p];
        br[p] = tr;
        zr[p] = br[p];
        zi[p] = bi[p];
      }
    }
    const int bin = m >= 0 ? m : m + n;
    for (int s = 0; s < ns; ++s) {
      const double cr = spectra[s][bin].real();
      const double ci = spectra[s][bin].imag();
      double* __restrict accr = ar[s];
      double* __restrict acci = ai[s];
      for (int p = 0; p < np; ++p) {
        accr[p] += cr * zr[p] - ci * zi[p];
        acci[p] += cr * zi[p] + ci * zr[p];
      }
    }
    if (!exact) {
      for (int p = 0; p < np; ++p) {
        const double t = zr[p] * wr[p] - zi[p] * wi[p];
        zi[p] = zr[p] * wi[p] + zi[p] * wr[p];
        zr[p] = t;
      }
    }
  }
  if (even) {
    const int bin = n / 2;
    const double kny = 0.5 * n;
    for (int p = 0; p < np; ++p) {
      const cplx cn = std::cos(cplx(kny * yr[p], kny * yi[p]));
      for (int s = 0; s < ns; ++s) {
        const cplx add = spectra[s][bin] * cn;
        ar[s][p] += add.real();
        ai[s][p] += add.imag();
      }
    }
  }
  for (int s = 0; s < ns; ++s)
    for (int p = 0; p < np; ++p) out[s][offset + p] = cplx(ar[s][p], ai[s][p]);
}

void check_eval_args(const Grid& g,
                     std::span<const std::span<const cplx>> spectra,
                     std::span<const cplx> points,
                     std::span<const std::span<cplx>> out) {
  if (spectra.empty() || spectra.size() > kMaxSeries)
    throw StructuralError("eval_trig_series supports 1..4 series");
  if (out.size() != spectra.size())
    throw StructuralError("eval_trig_series: one output span per series");
  for (const auto& s : spectra)
    if (static_cast<int>(s.size()) != g.n)
      throw StructuralError("spectrum length does not match grid");
  for (const auto& o : out)
    if (o.size() != points.size())
      throw StructuralError("output length does not match point count");
  const double scale = kTwoPi / g.length;
  double max_im = 0.0;
  for (const cplx& p : points)
    max_im = std::max(max_im, std::abs(p.imag()) * scale);
  if (max_im * (g.n / 2 + 1) > 700.0)
    throw NumericError("evaluation point too far from the real axis");
}

}  // namespace

ComplexField spectral_derivative(const ComplexField& f, int order) {
  if (order < 1) throw StructuralError("derivative order must be positive");
  const Grid& g = f.grid();
  ComplexField c = spectrum(f);
  const bool even = (g.n % 2) == 0;
  for (int idx = 0; idx < g.n; ++idx) {
    if (even && idx == g.n / 2 && (order % 2) == 1) {
      c[idx] = 0.0;
      continue;
    }
    c[idx] *= ik_power(g.wavenumber(idx), order);
  }
  return from_spectrum(c);
}

RealField spectral_derivative(const RealField& f, int order) {
  return real_part(spectral_derivative(to_complex(f), order));
}

ComplexField apply_multiplier(const ComplexField& f,
                              const std::function<cplx(double)>& m) {
  const Grid& g = f.grid();
  ComplexField c = spectrum(f);
  for (int idx = 0; idx < g.n; ++idx) {
    const double k = g.wavenumber(idx);
    const cplx v = m(k);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "multiplier is not finite at wavenumber %.17g", k);
      throw NumericError(buf);
    }
    c[idx] *= v;
  }
  return from_spectrum(c);
}

void dealias_two_thirds(ComplexField& f) {
  const Grid& g = f.grid();
  ComplexField c = spectrum(f);
  const int cut = g.n / 3;
  for (int idx = 0; idx < g.n; ++idx)
    if (std::abs(g.mode_number(idx)) > cut) c[idx] = 0.0;
  f = from_spectrum(c);
}

ComplexField resample(const ComplexField& f, int new_n) {
  const Grid& g = f.grid();
  if (new_n == g.n) return f;
  const Grid ng = make_grid(new_n, g.length);
  const ComplexField c = spectrum(f);
  ComplexField nc(ng);

  if (new_n < g.n) {
    if (g.n % new_n != 0)
      throw StructuralError("downsampling requires nested grid sizes");
    for (int idx = 0; idx < new_n; ++idx) {
      const int m = ng.mode_number(idx);
      if (new_n % 2 == 0 && m == -new_n / 2) {
        cplx v = c[g.bin_of_mode(-new_n / 2)];
        if (grid_has_mode(g.n, new_n / 2)) v += c[g.bin_of_mode(new_n / 2)];
        nc[idx] = v;
      } else {
        nc[idx] = c[g.bin_of_mode(m)];
      }
    }
  } else {
    for (int idx = 0; idx < g.n; ++idx) {
      const int m = g.mode_number(idx);
      if (g.n % 2 == 0 && m == -g.n / 2) {
        // split the source Nyquist pair; matches the cos convention
        nc[ng.bin_of_mode(-g.n / 2)] += 0.5 * c[idx];
        nc[ng.bin_of_mode(g.n / 2)] += 0.5 * c[idx];
      } else {
        nc[ng.bin_of_mode(m)] = c[idx];
      }
    }
  }
  return from_spectrum(nc);
}

RealField resample(const RealField& f, int new_n) {
  return real_part(resample(to_complex(f), new_n));
}

void eval_trig_series(const Grid& g,
                      std::span<const std::span<const cplx>> spectra,
                      std::span<const cplx> points,
                      std::span<const std::span<cplx>> out, bool parallel,
                      EvalMode mode) {
  check_eval_args(g, spectra, points, out);
  const int np = static_cast<int>(points.size());
  if (np == 0) return;
  const bool exact = mode == EvalMode::exact;
  const int nchunks = (np + kChunk - 1) / kChunk;
  const bool go_par =
      parallel && nchunks > 1 && static_cast<long>(np) * g.n >= (1L << 16);
#pragma omp parallel for schedule(static) if (go_par)
  for (int ci = 0; ci < nchunks; ++ci) {
    const int off = ci * kChunk;
    const int cnt = std::min(kChunk, np - off);
    eval_chunk(g, spectra, points.data() + off, cnt, out, off, exact);
  }
}

void eval_trig_series_reference(const Grid& g,
                                std::span<const std::span<const cplx>> spectra,
                                std::span<const cplx> points,
                                std::span<const std::span<cplx>> out) {
  check_eval_args(g, spectra, points, out);
  const int n = g.n;
  const double scale = kTwoPi / g.length;
  const bool even = (n % 2) == 0;
  for (size_t p = 0; p < points.size(); ++p) {
    const double a = scale * points[p].real();
    const double b = scale * points[p].imag();
    for (size_t s = 0; s < spectra.size(); ++s) {
      cplx acc = 0.0;
      for (int idx = 0; idx < n; ++idx) {
        const int m = g.mode_number(idx);
        if (even && m == -n / 2) {
          acc += spectra[s][idx] * std::cos(cplx(0.5 * n * a, 0.5 * n * b));
        } else {
          acc += spectra[s][idx] * std::exp(cplx(-m * b, m * a));
        }
      }
      out[s][p] = acc;
    }
  }
}

std::vector<cplx> interpolate_trig(const ComplexField& f,
                                   std::span<const cplx> points) {
  const ComplexField c = spectrum(f);
  std::vector<cplx> result(points.size());
  const std::span<const cplx> spectra[1] = {c.samples()};
  const std::span<cplx> outs[1] = {result};
  eval_trig_series(f.grid(), spectra, points, outs, true);
  return result;
}

std::vector<double> interpolate_trig(const RealField& f,
                                     std::span<const double> points) {
  std::vector<cplx> pts(points.size());
  for (size_t i = 0; i < points.size(); ++i) pts[i] = cplx(points[i], 0.0);
  const std::vector<cplx> vals = interpolate_trig(to_complex(f), pts);
  std::vector<double> result(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) result[i] = vals[i].real();
  return result;
}

}  // namespace uasc
