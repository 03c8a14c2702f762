// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/acoustics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctfrir/error.hpp"

namespace ctfrir {
namespace {

std::size_t MsToSamples(double ms, int sample_rate) {
  return static_cast<std::size_t>(std::llround(ms * 1e-3 * sample_rate));
}

double SumSquares(const std::vector<double>& x, std::size_t begin,
                  std::size_t end) {
  double acc = 0.0;
  end = std::min(end, x.size());
  for (std::size_t i = begin; i < end; ++i) acc += x[i] * x[i];
  return acc;
}

double ClampedRatioDb(double num, double den) {
  if (num <= 0.0 && den <= 0.0) Fail(Errc::kZeroEnergy, "no energy");
  if (den <= 0.0) return kClampDb;
  if (num <= 0.0) return -kClampDb;
  return std::clamp(10.0 * std::log10(num / den), -kClampDb, kClampDb);
}

// Least-squares slope of edc[begin, end) against time in seconds.
double Slope(const std::vector<double>& edc, std::size_t begin,
             std::size_t end, int sample_rate) {
  const double n = static_cast<double>(end - begin);
  double mean_t = 0.0, mean_y = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    mean_t += static_cast<double>(i) / sample_rate;
    mean_y += edc[i];
  }
  mean_t /= n;
  mean_y /= n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const double dt = static_cast<double>(i) / sample_rate - mean_t;
    stt += dt * dt;
    sty += dt * (edc[i] - mean_y);
  }
  return sty / stt;
}

}  // namespace

std::vector<double> Edc(const Rir& h) {
  h.Validate();
  std::vector<double> tail(h.size());
  double acc = 0.0;
  for (std::size_t i = h.size(); i-- > 0;) {
    acc += h.samples[i] * h.samples[i];
    tail[i] = acc;
  }
  if (!(acc > 0.0)) Fail(Errc::kZeroEnergy, "impulse response has no energy");
  for (auto& v : tail) {
    v = v > 0.0 ? 10.0 * std::log10(v / acc)
                : -std::numeric_limits<double>::infinity();
  }
  tail[0] = 0.0;
  return tail;
}

Rt60Fit FitRt60(const Rir& h) {
  const std::vector<double> edc = Edc(h);
  auto first_below = [&](double db) {
    return static_cast<std::size_t>(
        std::find_if(edc.begin(), edc.end(), [db](double v) { return v <= db; }) -
        edc.begin());
  };
  const std::size_t start = first_below(-5.0);
  Rt60Fit fit;
  std::size_t stop = first_below(-35.0);
  if (stop == edc.size()) {
    fit.range = DecayRange::kT20;
    stop = first_below(-25.0);
  }
  // Two finite points are the minimum for a slope; a jump straight past the
  // range (a lone impulse) leaves none.
  if (stop == edc.size() || start >= edc.size() || stop < start + 2 ||
      !std::isfinite(edc[stop - 1])) {
    Fail(Errc::kInsufficientDecayRange, "decay does not span the fit range");
  }
  const double slope = Slope(edc, start, stop, h.sample_rate);
  if (!(slope < 0.0)) {
    Fail(Errc::kInsufficientDecayRange, "non-decaying energy curve");
  }
  fit.seconds = -60.0 / slope;
  return fit;
}

double Rt60(const Rir& h) { return FitRt60(h).seconds; }

double Drr(const Rir& h) {
  h.Validate();
  const std::size_t d = h.direct_index;
  const std::size_t before = MsToSamples(0.5, h.sample_rate);
  const std::size_t after = MsToSamples(2.5, h.sample_rate);
  const std::size_t begin = d >= before ? d - before : 0;
  const std::size_t end = std::min(d + after, h.size());
  return ClampedRatioDb(SumSquares(h.samples, begin, end),
                        SumSquares(h.samples, end, h.size()));
}

double C50(const Rir& h) {
  h.Validate();
  const std::size_t d = h.direct_index;
  const std::size_t split = d + MsToSamples(50.0, h.sample_rate);
  Require(split <= h.size(), Errc::kTooShort,
          "response ends within 50 ms of the direct path");
  return ClampedRatioDb(SumSquares(h.samples, d, split),
                        SumSquares(h.samples, split, h.size()));
}

AcousticParams ComputeParams(const Rir& h) {
  AcousticParams p;
  try {
    p.rt60 = Rt60(h);
  } catch (const Error& e) {
    if (e.code() != Errc::kInsufficientDecayRange) throw;
  }
  p.drr = Drr(h);
  p.c50 = C50(h);
  return p;
}

}  // namespace ctfrir
