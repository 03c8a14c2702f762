// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "ctfrir/error.hpp"

namespace ctfrir {
namespace {

// The FFTW planner is not reentrant; execution is.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

struct RealFft::Impl {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Impl() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
    fftw_free(real);
    fftw_free(spec);
  }
};

RealFft::RealFft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  Require(n >= 2, Errc::kInvalidArgument, "FFT size must be >= 2");
  impl_->real = fftw_alloc_real(n);
  impl_->spec = fftw_alloc_complex(n / 2 + 1);
  std::lock_guard<std::mutex> lock(PlannerMutex());
  // ESTIMATE keeps plans (and therefore rounding) independent of timing.
  const int n_int = static_cast<int>(n);
  impl_->forward = fftw_plan_dft_r2c_1d(n_int, impl_->real, impl_->spec,
                                        FFTW_ESTIMATE);
  impl_->inverse = fftw_plan_dft_c2r_1d(n_int, impl_->spec, impl_->real,
                                        FFTW_ESTIMATE);
  if (!impl_->forward || !impl_->inverse) {
    Fail(Errc::kInvalidArgument, "FFTW planning failed");
  }
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

void RealFft::Forward(std::span<const double> in, std::span<cdouble> out) {
  Require(in.size() <= n_ && out.size() == num_bins(), Errc::kShapeMismatch,
          "FFT buffer size");
  std::copy(in.begin(), in.end(), impl_->real);
  std::fill(impl_->real + in.size(), impl_->real + n_, 0.0);
  fftw_execute(impl_->forward);
  const auto* spec = reinterpret_cast<const cdouble*>(impl_->spec);
  std::copy(spec, spec + num_bins(), out.begin());
}

void RealFft::Inverse(std::span<const cdouble> in, std::span<double> out) {
  Require(in.size() == num_bins() && out.size() == n_, Errc::kShapeMismatch,
          "IFFT buffer size");
  auto* spec = reinterpret_cast<cdouble*>(impl_->spec);
  std::copy(in.begin(), in.end(), spec);
  // c2r assumes Hermitian input; imaginary parts of DC/Nyquist are ignored.
  fftw_execute(impl_->inverse);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = impl_->real[i] * scale;
}

std::size_t NextPow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> FftConvolve(std::span<const double> a,
                                std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = NextPow2(std::max<std::size_t>(out_len, 2));
  RealFft fft(n);
  std::vector<cdouble> fa(fft.num_bins()), fb(fft.num_bins());
  fft.Forward(a, fa);
  fft.Forward(b, fb);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  std::vector<double> out(n);
  fft.Inverse(fa, out);
  out.resize(out_len);
  return out;
}

}  // namespace ctfrir
