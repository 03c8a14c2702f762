// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <random>

#include "ctfrir/eval.hpp"
#include "ctfrir/room.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace ctfrir;

TEST_CASE("alignment of identical and delayed responses") {
  const Rir ref = GenPolack(0.4, 3.0, 16000, 9600, 1, 50);
  const AlignedPair same = AlignByDirectPeak(ref, ref);
  CHECK(same.shift == 0);
  CHECK(same.est.samples == same.ref.samples);
  CHECK(same.est.samples[same.est.direct_index] == 1.0);

  Rir delayed = ref;
  delayed.samples.insert(delayed.samples.begin(), 5, 0.0);
  const AlignedPair d = AlignByDirectPeak(delayed, ref);
  CHECK(d.shift == 5);
  CHECK(d.est.size() == d.ref.size());
  CHECK(d.est.samples == d.ref.samples);

  Rir zero = ref;
  std::fill(zero.samples.begin(), zero.samples.end(), 0.0);
  CHECK_ERRC(AlignByDirectPeak(zero, ref), Errc::kZeroRir);
  CHECK_ERRC(AlignByDirectPeak(ref, zero), Errc::kZeroRir);
}

TEST_CASE("alignment normalizes each response by its own peak") {
  Rir ref = GenPolack(0.4, 3.0, 16000, 9600, 1, 20);
  Rir est = ref;
  for (auto& v : est.samples) v *= -4.0;
  const AlignedPair a = AlignByDirectPeak(est, ref);
  CHECK(a.est.samples[a.est.direct_index] == -1.0);
  CHECK(a.ref.samples[a.ref.direct_index] == 1.0);
}

TEST_CASE("RIR-50 fixtures") {
  const Rir ref = GenPolack(0.4, 3.0, 16000, 9600, 1, 30);
  CHECK(Rir50Rmse(ref, ref) == 0.0);

  // A uniform 0.01 offset on every window sample except the unit peak.
  const AlignedPair unit = AlignByDirectPeak(ref, ref);
  Rir est = unit.ref;
  const std::size_t p = est.direct_index;
  for (std::size_t i = p + 1; i < p + 800; ++i) est.samples[i] += 0.01;
  CHECK(Rir50Rmse(est, unit.ref) == doctest::Approx(0.01 * std::sqrt(799.0 / 800.0)).epsilon(1e-9));

  Rir other = GenPolack(0.4, 3.0, 16000, 9600, 2, 12);
  CHECK(Rir50Rmse(other, ref) == doctest::Approx(Rir50Rmse(ref, other)).epsilon(1e-15));

  Rir shorter = ref;
  shorter.samples.resize(30 + 700);
  CHECK_ERRC(Rir50Rmse(shorter, ref), Errc::kTooShort);
}

TEST_CASE("metrics by hand") {
  const std::vector<double> ref{1.0, 2.0, 3.0, 4.0};
  Metrics m = ComputeMetrics(ref, ref);
  CHECK(m.mae == 0.0);
  CHECK(m.rmse == 0.0);
  CHECK(*m.pearson == doctest::Approx(1.0));
  CHECK(m.count == 4);

  std::vector<double> shifted = ref;
  for (auto& v : shifted) v += 0.1;
  m = ComputeMetrics(shifted, ref);
  CHECK(m.mae == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(m.rmse == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(*m.pearson == doctest::Approx(1.0).epsilon(1e-12));

  // Errors {1, -1, 0, 2}: MAE 1, RMSE sqrt(6 / 4).
  m = ComputeMetrics(std::vector<double>{2.0, 1.0, 3.0, 6.0}, ref);
  CHECK(m.mae == 1.0);
  CHECK(m.rmse == std::sqrt(1.5));
  // Centred {-1,-2,0,3} and {-1.5,-0.5,0.5,1.5}: products sum to 7,
  // squares to 14 and 5.
  CHECK(*m.pearson == doctest::Approx(7.0 / std::sqrt(70.0)).epsilon(1e-12));
}

TEST_CASE("Pearson is undefined without variance") {
  const std::vector<double> flat{2.0, 2.0, 2.0};
  const std::vector<double> ref{1.0, 2.0, 3.0};
  const Metrics m = ComputeMetrics(flat, ref);
  CHECK_FALSE(m.pearson.has_value());
  CHECK(m.mae == doctest::Approx(2.0 / 3.0));
  CHECK_FALSE(ComputeMetrics(std::vector<double>{1.0}, std::vector<double>{2.0})
                  .pearson.has_value());
  CHECK_ERRC(Pearson(flat, ref), Errc::kZeroVariance);
  CHECK_ERRC(ComputeMetrics(flat, std::vector<double>{1.0}), Errc::kLengthMismatch);
  CHECK_ERRC(ComputeMetrics(std::vector<double>{}, std::vector<double>{}),
             Errc::kLengthMismatch);
}

TEST_CASE("metric properties on random data") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(20), b(20);
    for (auto& v : a) v = g(rng);
    for (auto& v : b) v = g(rng);
    const Metrics m = ComputeMetrics(a, b);
    REQUIRE(m.mae <= m.rmse);
    REQUIRE(*m.pearson >= -1.0);
    REQUIRE(*m.pearson <= 1.0);
    std::vector<double> affine(a);
    for (auto& v : affine) v = 3.0 * v - 7.0;
    REQUIRE(*ComputeMetrics(affine, b).pearson ==
            doctest::Approx(*m.pearson).epsilon(1e-12));
    REQUIRE(Pearson(a, affine) == doctest::Approx(1.0).epsilon(1e-12));
  }
}
