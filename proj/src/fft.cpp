#include "fft.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace wblab::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftEngine::FftEngine(int dim, int n) : dim_(dim), n_(n) {
  const std::size_t real_size = dim == 1 ? n : static_cast<std::size_t>(n) * n;
  spectral_size_ = dim == 1 ? n / 2 + 1 : static_cast<std::size_t>(n) * (n / 2 + 1);
  std::vector<double> r(real_size);
  std::vector<cplx> c(spectral_size_);
  std::vector<cplx> a(real_size), b(real_size);
  auto* cp = reinterpret_cast<fftw_complex*>(c.data());
  auto* ap = reinterpret_cast<fftw_complex*>(a.data());
  auto* bp = reinterpret_cast<fftw_complex*>(b.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  if (dim == 1) {
    forward_ = fftw_plan_dft_r2c_1d(n, r.data(), cp, flags);
    backward_ = fftw_plan_dft_c2r_1d(n, cp, r.data(), flags);
    cforward_ = fftw_plan_dft_1d(n, ap, bp, FFTW_FORWARD, flags);
    cbackward_ = fftw_plan_dft_1d(n, ap, bp, FFTW_BACKWARD, flags);
  } else {
    forward_ = fftw_plan_dft_r2c_2d(n, n, r.data(), cp, flags);
    backward_ = fftw_plan_dft_c2r_2d(n, n, cp, r.data(), flags);
    cforward_ = fftw_plan_dft_2d(n, n, ap, bp, FFTW_FORWARD, flags);
    cbackward_ = fftw_plan_dft_2d(n, n, ap, bp, FFTW_BACKWARD, flags);
  }
}

FftEngine::~FftEngine() {
  std::lock_guard lock(planner_mutex());
  if (forward_) fftw_destroy_plan(forward_);
  if (backward_) fftw_destroy_plan(backward_);
  if (cforward_) fftw_destroy_plan(cforward_);
  if (cbackward_) fftw_destroy_plan(cbackward_);
}

const FftEngine& FftEngine::get(int dim, int n) {
  static std::map<std::pair<int, int>, std::unique_ptr<FftEngine>> cache;
  std::lock_guard lock(planner_mutex());
  auto& slot = cache[{dim, n}];
  if (!slot) slot.reset(new FftEngine(dim, n));
  return *slot;
}

void FftEngine::r2c(const double* in, cplx* out) const {
  // Out-of-place r2c preserves its input.
  fftw_execute_dft_r2c(forward_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void FftEngine::c2r(const cplx* in, double* out) const {
  // Multi-dimensional c2r destroys its input.
  thread_local std::vector<cplx> scratch;
  scratch.assign(in, in + spectral_size_);
  fftw_execute_dft_c2r(backward_, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

void FftEngine::c2c_forward(const cplx* in, cplx* out) const {
  fftw_execute_dft(cforward_, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void FftEngine::c2c_backward(const cplx* in, cplx* out) const {
  fftw_execute_dft(cbackward_, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace wblab::detail
