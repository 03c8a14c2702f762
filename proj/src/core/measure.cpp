// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/measure.hpp"

#include <cmath>

#include "ctfrir/error.hpp"
#include "ctfrir/fft.hpp"

namespace ctfrir {

PseudoMeasurement::PseudoMeasurement(const SweepSpec& spec,
                                     const StftConfig& config, double eps)
    : spec_(spec), config_(config) {
  config_.Validate();
  sweep_ = GenLogSweep(spec_);
  inverse_ = GenInverseFilter(sweep_, spec_, eps);
}

std::size_t PseudoMeasurement::pre_roll() const {
  return static_cast<std::size_t>(spec_.sample_rate / 1000);
}

Rir PseudoMeasurement::Measure(const CtfFilter& filter) const {
  filter.Validate();
  Require(filter.config == config_, Errc::kShapeMismatch,
          "filter STFT config differs from the measurement");
  Require(filter.sample_rate == spec_.sample_rate, Errc::kSampleRateMismatch,
          "filter and sweep sample rates differ");

  const AudioSignal e =
      MeasurementExcitation(spec_, filter.length(), config_.hop);
  const Spectrogram z_spec = CtfConvolve(filter, Stft(e, config_));
  const AudioSignal z = Istft(z_spec, e.size());

  // Only the extraction window of z * v is needed; a full linear
  // convolution keeps it free of wrap-around.
  const std::vector<double> full = FftConvolve(z.samples, inverse_.filter.samples);
  const std::size_t start = inverse_.zero_lag - pre_roll();
  const std::size_t count = filter.length() * config_.hop;
  Require(start + count <= full.size(), Errc::kShapeMismatch,
          "extraction window exceeds the measurement");

  std::vector<double> h(full.begin() + static_cast<std::ptrdiff_t>(start),
                        full.begin() + static_cast<std::ptrdiff_t>(start + count));
  double peak = 0.0;
  for (double v : h) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0)) Fail(Errc::kPeakNotFound, "measured response is all zero");
  return Rir::FromPeak(std::move(h), spec_.sample_rate);
}

Rir CtfToRir(const CtfFilter& filter, const SweepSpec& spec) {
  return PseudoMeasurement(spec, filter.config).Measure(filter);
}

}  // namespace ctfrir
