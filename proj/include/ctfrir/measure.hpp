// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "ctfrir/ctf.hpp"
#include "ctfrir/signal.hpp"
#include "ctfrir/stft.hpp"
#include "ctfrir/sweep.hpp"

namespace ctfrir {

// Simulated sweep measurement of a CTF filter. The sweep and its inverse
// filter are built once; Measure is const and may be called concurrently.
class PseudoMeasurement {
 public:
  explicit PseudoMeasurement(const SweepSpec& spec = {},
                             const StftConfig& config = {}, double eps = 1e-8);

  // E = stft(sweep + zero tail), Z = H (*) E, z = istft(Z), h = z * v.
  // Returns length * hop samples starting 1 ms before the deconvolution lag.
  Rir Measure(const CtfFilter& filter) const;

  const SweepSpec& spec() const { return spec_; }
  const AudioSignal& sweep() const { return sweep_; }
  const InverseFilter& inverse() const { return inverse_; }
  // Offset of the extraction window relative to the deconvolution lag.
  std::size_t pre_roll() const;

 private:
  SweepSpec spec_;
  StftConfig config_;
  AudioSignal sweep_;
  InverseFilter inverse_;
};

Rir CtfToRir(const CtfFilter& filter, const SweepSpec& spec = {});

}  // namespace ctfrir
