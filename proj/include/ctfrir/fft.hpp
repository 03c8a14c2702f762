// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace ctfrir {

using cdouble = std::complex<double>;

// Real-to-complex FFT of fixed size backed by FFTW. Forward is unnormalized;
// Inverse scales by 1/n so Inverse(Forward(x)) == x. An instance owns scratch
// buffers and must not be shared between threads; separate instances may run
// concurrently.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t num_bins() const { return n_ / 2 + 1; }

  // |in| may be shorter than n (zero padded). |out| holds n/2+1 bins.
  void Forward(std::span<const double> in, std::span<cdouble> out);
  // |in| holds n/2+1 bins, |out| receives n samples.
  void Inverse(std::span<const cdouble> in, std::span<double> out);

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

std::size_t NextPow2(std::size_t n);

// Full linear convolution, length a.size() + b.size() - 1.
std::vector<double> FftConvolve(std::span<const double> a,
                                std::span<const double> b);

}  // namespace ctfrir
