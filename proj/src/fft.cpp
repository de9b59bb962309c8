#include "uasc/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace uasc {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// Plans are created once per size under a lock and executed concurrently via
// the new-array interface. FFTW_ESTIMATE keeps plan selection deterministic.
PlanPair& plans_for(int n) {
  static std::mutex mu;
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  fftw_complex* buf_in = fftw_alloc_complex(n);
  fftw_complex* buf_out = fftw_alloc_complex(n);
  PlanPair p;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  p.fwd = fftw_plan_dft_1d(n, buf_in, buf_out, FFTW_FORWARD, flags);
  p.bwd = fftw_plan_dft_1d(n, buf_in, buf_out, FFTW_BACKWARD, flags);
  fftw_free(buf_in);
  fftw_free(buf_out);
  return cache.emplace(n, p).first->second;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

ComplexField spectrum(const ComplexField& f) {
  const int n = f.size();
  if (n == 0) throw StructuralError("transform of an empty field");
  ComplexField out(f.grid());
  ComplexField in = f;  // execute_dft may not take a const input pointer
  fftw_execute_dft(plans_for(n).fwd, as_fftw(in.data()), as_fftw(out.data()));
  const double inv = 1.0 / n;
  for (int j = 0; j < n; ++j) out[j] *= inv;
  return out;
}

ComplexField spectrum(const RealField& f) { return spectrum(to_complex(f)); }

ComplexField from_spectrum(const ComplexField& coeffs) {
  const int n = coeffs.size();
  if (n == 0) throw StructuralError("synthesis of an empty spectrum");
  ComplexField out(coeffs.grid());
  ComplexField in = coeffs;
  fftw_execute_dft(plans_for(n).bwd, as_fftw(in.data()), as_fftw(out.data()));
  return out;
}

}  // namespace uasc
