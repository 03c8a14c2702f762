// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>

#include "ctfrir/signal.hpp"

namespace ctfrir {

// Logarithmic sine sweep parameters. Defaults are the 62.5 Hz - 8 kHz,
// 8.192 s excitation with 256/128-sample raised-cosine fades.
struct SweepSpec {
  double f1 = 62.5;
  double f2 = 8000.0;
  double duration_s = 8.192;
  std::size_t fade_in = 256;
  std::size_t fade_out = 128;
  int sample_rate = 16000;

  std::size_t num_samples() const;
  // Throws kInvalidSpec.
  void Validate() const;
};

// e(t) = sin(2*pi*f1*T / ln(f2/f1) * (exp(t/T * ln(f2/f1)) - 1)) with
// raised-cosine fades; the first and last samples are zero.
AudioSignal GenLogSweep(const SweepSpec& spec);

struct InverseFilter {
  AudioSignal filter;
  // Index in (sweep * filter) where the deconvolved impulse sits.
  std::size_t zero_lag = 0;
};

// Regularized spectral inversion V = conj(E) / (|E|^2 + eps * max|E|^2) on an
// FFT of at least twice the sweep length, zeroed outside [f1, f2], rotated so
// the impulse lands at zero_lag = sweep length and scaled so that
// (sweep * filter)[zero_lag] == 1.
InverseFilter GenInverseFilter(const AudioSignal& sweep, const SweepSpec& spec,
                               double eps = 1e-8);

// Sweep followed by (ctf_length + 2) * hop zeros, long enough for a CTF of
// |ctf_length| frames to ring out completely.
AudioSignal MeasurementExcitation(const SweepSpec& spec, std::size_t ctf_length,
                                  std::size_t hop);

}  // namespace ctfrir
