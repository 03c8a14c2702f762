// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ctfrir/signal.hpp"
#include "ctfrir/stft.hpp"
#include "ctfrir/sweep.hpp"

namespace ctfrir {

// Per-band FIR filter along the frame axis: F bands x L lags.
struct CtfFilter {
  ComplexMatrix coeffs;
  StftConfig config;
  int sample_rate = 16000;

  std::size_t bands() const { return static_cast<std::size_t>(coeffs.rows()); }
  std::size_t length() const { return static_cast<std::size_t>(coeffs.cols()); }
  // Time span covered by the filter, length * hop / sample_rate.
  double SpanSeconds() const;
  void Validate() const;

  static CtfFilter Identity(const StftConfig& config, std::size_t length,
                            int sample_rate);
  static CtfFilter Zeros(const StftConfig& config, std::size_t length,
                         int sample_rate);
};

// X(f, t) = sum_l H_l(f) S(f, t - l), zero history, same frame count as S.
Spectrogram CtfConvolve(const CtfFilter& filter, const Spectrogram& s);

// Per-band ridge-regularized least squares through the normal equations of
// the T x L zero-history convolution matrix. With no |ridge| the per-band
// default 1e-10 * trace(Gram) / L is used.
CtfFilter CtfLsFit(const Spectrogram& s, const Spectrogram& x,
                   std::size_t length, std::optional<double> ridge = {});

// How the first term of the RI+Mag loss compares complex entries.
enum class MagnitudeTerm {
  kMagnitudeDifference,  // | |A| - |B| |
  kComplexDifference,    // | A - B |
};

struct RefineOptions {
  double initial_step = 1.0;
  int max_iterations = 100;
  double charbonnier_eps = 1e-6;
  MagnitudeTerm magnitude_term = MagnitudeTerm::kMagnitudeDifference;
};

// Charbonnier-smoothed RI+Mag loss of (H (*) S) against X, with
// sqrt(r^2 + eps^2) - eps in place of |r|.
double SmoothedReconstructionLoss(const CtfFilter& filter, const Spectrogram& s,
                                  const Spectrogram& x,
                                  const RefineOptions& options = {});

// Gradient of SmoothedReconstructionLoss packed as dL/dRe(H) + i dL/dIm(H).
ComplexMatrix SmoothedReconstructionGradient(const CtfFilter& filter,
                                             const Spectrogram& s,
                                             const Spectrogram& x,
                                             const RefineOptions& options = {});

// Per-band gradient descent with backtracking on the smoothed loss. Each
// band's loss is non-increasing, so the result is never worse than |init|.
CtfFilter CtfL1Refine(const CtfFilter& init, const Spectrogram& s,
                      const Spectrogram& x, const RefineOptions& options = {});

enum class ProbeKind {
  kWhiteNoise,  // seeded unit-variance Gaussian noise
  kLogSweep,    // the measurement excitation itself
};

struct ProbeSpec {
  ProbeKind kind = ProbeKind::kWhiteNoise;
  double duration_s = 8.0;       // white noise only
  std::uint64_t seed = 20260101;  // white noise only
  SweepSpec sweep;               // log sweep only
  std::optional<double> ridge;
  // Truncate RIRs longer than the CTF span instead of failing.
  bool truncate_long_rir = false;
};

// Probes h with |probe| in the time domain and fits the CTF by least squares.
// Throws kRirTooLong when the last nonzero sample of h lies beyond
// length * hop, unless truncation is requested.
CtfFilter RirToCtf(const Rir& h, const StftConfig& config, std::size_t length,
                   const ProbeSpec& probe = {});

}  // namespace ctfrir
