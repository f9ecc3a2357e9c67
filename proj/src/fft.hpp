#pragma once

#include <fftw3.h>

#include "wblab/grid.hpp"

namespace wblab::detail {

/// Cached FFTW plans for one (dim, n). Planning uses FFTW_ESTIMATE so the chosen
/// algorithm, and therefore the rounding, does not vary between runs.
class FftEngine {
 public:
  static const FftEngine& get(int dim, int n);

  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;
  ~FftEngine();

  /// Unnormalized real-to-complex transform.
  void r2c(const double* in, cplx* out) const;
  /// Unnormalized complex-to-real transform; `in` is left untouched.
  void c2r(const cplx* in, double* out) const;
  /// Unnormalized complex transforms, sign -1 (forward) and +1 (backward).
  void c2c_forward(const cplx* in, cplx* out) const;
  void c2c_backward(const cplx* in, cplx* out) const;

 private:
  FftEngine(int dim, int n);

  int dim_;
  int n_;
  std::size_t spectral_size_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
  fftw_plan cforward_ = nullptr;
  fftw_plan cbackward_ = nullptr;
};

}  // namespace wblab::detail
