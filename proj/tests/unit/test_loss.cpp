// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <random>

#include "ctfrir/loss.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace ctfrir;
using namespace ctfrir::testing;

namespace {

Spectrogram OneBin(cdouble v) {
  Spectrogram s;
  s.config = StftConfig{4, 2};
  s.data = ComplexMatrix::Zero(1, 1);
  s.data(0, 0) = v;
  return s;
}

}  // namespace

TEST_CASE("single-bin fixture") {
  const double expect = std::sqrt(2.0) + 2.0;
  CHECK(std::abs(LossRiMag(OneBin({1.0, 1.0}), OneBin({0.0, 0.0})) - expect) <= 1e-9);
  CHECK(std::abs(LossRiMag(OneBin({1.0, 1.0}), OneBin({0.0, 0.0}),
                           MagnitudeTerm::kComplexDifference) -
                 expect) <= 1e-9);
}

TEST_CASE("the two first-term readings differ when phases differ") {
  const Spectrogram a = OneBin({1.0, 0.0});
  const Spectrogram b = OneBin({-1.0, 0.0});
  CHECK(LossRiMag(a, b) == doctest::Approx(2.0));
  CHECK(LossRiMag(a, b, MagnitudeTerm::kComplexDifference) == doctest::Approx(4.0));
}

TEST_CASE("pseudometric properties and homogeneity") {
  std::mt19937_64 rng(1);
  const Spectrogram a = RandomSpectrogram(5, 12, rng);
  const Spectrogram b = RandomSpectrogram(5, 12, rng);
  CHECK(LossRiMag(a, a) == 0.0);
  CHECK(LossRiMag(a, b) > 0.0);
  CHECK(LossRiMag(a, b) == LossRiMag(b, a));
  Spectrogram a3 = a, b3 = b;
  a3.data *= 3.0;
  b3.data *= 3.0;
  CHECK(LossRiMag(a3, b3) == doctest::Approx(3.0 * LossRiMag(a, b)).epsilon(1e-13));
  CHECK_ERRC(LossRiMag(a, RandomSpectrogram(5, 13, rng)), Errc::kShapeMismatch);
}

TEST_CASE("composite loss") {
  std::mt19937_64 rng(2);
  const Spectrogram s = RandomSpectrogram(4, 20, rng);
  const CtfFilter h = RandomFilter(s, 3, rng);
  const Spectrogram x = CtfConvolve(h, s);

  const CompositeLoss zero = LossComposite(h, s, x, x, s);
  CHECK(zero.total == 0.0);

  const Spectrogram x_hat = RandomSpectrogram(4, 20, rng);
  const Spectrogram s_hat = RandomSpectrogram(4, 20, rng);
  const CtfFilter h_hat = RandomFilter(s, 3, rng);
  const CompositeLoss c = LossComposite(h_hat, s, x, x_hat, s_hat);
  CHECK(c.rec == LossRiMag(CtfConvolve(h_hat, s), x));
  CHECK(c.rvb == LossRiMag(x_hat, x));
  CHECK(c.cln == LossRiMag(s_hat, s));
  CHECK(c.total == c.rec + c.rvb + c.cln);

  const CompositeLoss rec_only = LossComposite(h_hat, s, x, x_hat, s_hat, {0.0, 0.0});
  CHECK(rec_only.total == c.rec);

  CHECK_ERRC(LossComposite(h_hat, s, x, x_hat, s_hat, {-1.0, 1.0}),
             Errc::kInvalidArgument);
  CHECK_ERRC(LossComposite(h_hat, s, x, RandomSpectrogram(4, 19, rng), s_hat),
             Errc::kShapeMismatch);
}
