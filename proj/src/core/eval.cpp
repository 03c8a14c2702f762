// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/eval.hpp"

#include <algorithm>
#include <cmath>

#include "ctfrir/error.hpp"

namespace ctfrir {
namespace {

Rir CropAndNormalize(const Rir& h, std::size_t begin, std::size_t count,
                     std::size_t direct) {
  const double peak = std::abs(h.samples[PeakIndex(h.samples)]);
  Rir out;
  out.sample_rate = h.sample_rate;
  out.samples.assign(h.samples.begin() + static_cast<std::ptrdiff_t>(begin),
                     h.samples.begin() + static_cast<std::ptrdiff_t>(begin + count));
  for (auto& v : out.samples) v /= peak;
  out.direct_index = direct;
  return out;
}

}  // namespace

AlignedPair AlignByDirectPeak(const Rir& est, const Rir& ref) {
  est.Validate();
  ref.Validate();
  Require(est.sample_rate == ref.sample_rate, Errc::kSampleRateMismatch,
          "responses differ in sample rate");
  Require(Energy(est.samples) > 0.0, Errc::kZeroRir, "estimate is all zero");
  Require(Energy(ref.samples) > 0.0, Errc::kZeroRir, "reference is all zero");
  const std::size_t pe = PeakIndex(est.samples);
  const std::size_t pr = PeakIndex(ref.samples);
  const std::size_t pre = std::min(pe, pr);
  const std::size_t count =
      std::min(est.size() - (pe - pre), ref.size() - (pr - pre));
  AlignedPair out;
  out.est = CropAndNormalize(est, pe - pre, count, pre);
  out.ref = CropAndNormalize(ref, pr - pre, count, pre);
  out.shift = static_cast<std::ptrdiff_t>(pe) - static_cast<std::ptrdiff_t>(pr);
  return out;
}

double Rir50Rmse(const Rir& est, const Rir& ref) {
  const AlignedPair a = AlignByDirectPeak(est, ref);
  const auto window = static_cast<std::size_t>(std::llround(0.05 * est.sample_rate));
  const std::size_t d = a.est.direct_index;
  Require(d + window <= a.est.size(), Errc::kTooShort,
          "responses end within 50 ms of the peak");
  double acc = 0.0;
  for (std::size_t i = d; i < d + window; ++i) {
    const double diff = a.est.samples[i] - a.ref.samples[i];
    acc += diff * diff;
  }
  return std::sqrt(acc / static_cast<double>(window));
}

double Pearson(std::span<const double> a, std::span<const double> b) {
  Require(a.size() == b.size(), Errc::kLengthMismatch, "list lengths differ");
  Require(a.size() >= 2, Errc::kZeroVariance, "need at least two points");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  Require(saa > 0.0 && sbb > 0.0, Errc::kZeroVariance, "zero variance");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

Metrics ComputeMetrics(std::span<const double> estimates,
                       std::span<const double> references) {
  Require(estimates.size() == references.size(), Errc::kLengthMismatch,
          "list lengths differ");
  Require(!estimates.empty(), Errc::kLengthMismatch, "empty lists");
  Metrics m;
  m.count = estimates.size();
  double abs_sum = 0.0, sq_sum = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    Require(std::isfinite(estimates[i]) && std::isfinite(references[i]),
            Errc::kNonFinite, "non-finite metric input");
    const double d = estimates[i] - references[i];
    abs_sum += std::abs(d);
    sq_sum += d * d;
  }
  const double n = static_cast<double>(m.count);
  m.mae = abs_sum / n;
  m.rmse = std::sqrt(sq_sum / n);
  try {
    m.pearson = Pearson(estimates, references);
  } catch (const Error& e) {
    if (e.code() != Errc::kZeroVariance) throw;
  }
  return m;
}

}  // namespace ctfrir
