// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ctfrir/error.hpp"
#include "ctfrir/fft.hpp"

namespace ctfrir {

std::size_t SweepSpec::num_samples() const {
  return static_cast<std::size_t>(
      std::llround(duration_s * static_cast<double>(sample_rate)));
}

void SweepSpec::Validate() const {
  Require(sample_rate > 0, Errc::kInvalidSpec, "sample rate must be positive");
  Require(std::isfinite(f1) && std::isfinite(f2) && f1 > 0.0 && f1 < f2,
          Errc::kInvalidSpec, "need 0 < f1 < f2");
  Require(f2 <= 0.5 * sample_rate, Errc::kInvalidSpec, "f2 above Nyquist");
  Require(std::isfinite(duration_s) && duration_s > 0.0, Errc::kInvalidSpec,
          "duration must be positive");
  const std::size_t n = num_samples();
  Require(n >= 2, Errc::kInvalidSpec, "sweep shorter than two samples");
  Require(fade_in < n && fade_out < n && fade_in + fade_out <= n,
          Errc::kInvalidSpec, "fades longer than the sweep");
}

AudioSignal GenLogSweep(const SweepSpec& spec) {
  spec.Validate();
  const std::size_t n = spec.num_samples();
  const double fs = spec.sample_rate;
  const double rate = std::log(spec.f2 / spec.f1);
  const double k = 2.0 * std::numbers::pi * spec.f1 * spec.duration_s / rate;
  AudioSignal e;
  e.sample_rate = spec.sample_rate;
  e.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fs;
    e.samples[i] = std::sin(k * (std::exp(t / spec.duration_s * rate) - 1.0));
  }
  for (std::size_t m = 0; m < spec.fade_in; ++m) {
    e.samples[m] *= 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(m) /
                                         static_cast<double>(spec.fade_in));
  }
  for (std::size_t m = 0; m < spec.fade_out; ++m) {
    e.samples[n - 1 - m] *=
        0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(m) /
                             static_cast<double>(spec.fade_out));
  }
  return e;
}

InverseFilter GenInverseFilter(const AudioSignal& sweep, const SweepSpec& spec,
                               double eps) {
  spec.Validate();
  sweep.Validate();
  Require(!sweep.empty(), Errc::kEmptySignal, "empty sweep");
  Require(sweep.sample_rate == spec.sample_rate, Errc::kSampleRateMismatch,
          "sweep and spec sample rates differ");
  Require(std::isfinite(eps) && eps >= 0.0, Errc::kInvalidArgument,
          "eps must be finite and >= 0");

  const std::size_t len = sweep.size();
  const std::size_t nfft = NextPow2(2 * len);
  RealFft fft(nfft);
  std::vector<cdouble> spectrum(fft.num_bins());
  fft.Forward(sweep.samples, spectrum);
  double peak_power = 0.0;
  for (const auto& v : spectrum) peak_power = std::max(peak_power, std::norm(v));
  Require(peak_power > 0.0, Errc::kZeroEnergy, "sweep has no energy");

  const double floor = eps * peak_power;
  const double bin_hz = static_cast<double>(spec.sample_rate) / static_cast<double>(nfft);
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double freq = static_cast<double>(k) * bin_hz;
    if (freq < spec.f1 || freq > spec.f2) {
      spectrum[k] = 0.0;
      continue;
    }
    const double denom = std::norm(spectrum[k]) + floor;
    if (!(denom > 0.0)) Fail(Errc::kNonFinite, "inverse filter has a zero bin");
    spectrum[k] = std::conj(spectrum[k]) / denom;
  }
  std::vector<double> raw(nfft);
  fft.Inverse(spectrum, raw);

  // Rotate so the acausal half lands before zero_lag = len.
  InverseFilter inv;
  inv.zero_lag = len;
  inv.filter.sample_rate = spec.sample_rate;
  inv.filter.samples.resize(nfft);
  for (std::size_t i = 0; i < nfft; ++i) {
    inv.filter.samples[(i + len) % nfft] = raw[i];
  }

  double at_zero = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    at_zero += sweep.samples[i] * inv.filter.samples[len - i];
  }
  if (!std::isfinite(at_zero) || at_zero == 0.0) {
    Fail(Errc::kNonFinite, "degenerate inverse filter");
  }
  for (auto& v : inv.filter.samples) v /= at_zero;
  inv.filter.Validate();
  return inv;
}

AudioSignal MeasurementExcitation(const SweepSpec& spec, std::size_t ctf_length,
                                  std::size_t hop) {
  Require(ctf_length >= 1 && hop >= 1, Errc::kInvalidArgument,
          "CTF length and hop must be positive");
  AudioSignal e = GenLogSweep(spec);
  e.samples.resize(e.samples.size() + (ctf_length + 2) * hop, 0.0);
  return e;
}

}  // namespace ctfrir
