// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/loss.hpp"

#include <cmath>

#include "ctfrir/error.hpp"
#include "ctfrir/fft.hpp"

namespace ctfrir {

void LossWeights::Validate() const {
  Require(std::isfinite(rvb) && std::isfinite(cln) && rvb >= 0.0 && cln >= 0.0,
          Errc::kInvalidArgument, "loss weights must be finite and >= 0");
}

double LossRiMag(const Spectrogram& a, const Spectrogram& b,
                 MagnitudeTerm term) {
  Require(a.data.rows() == b.data.rows() && a.data.cols() == b.data.cols(),
          Errc::kShapeMismatch, "loss operands differ in shape");
  Require(a.data.size() > 0, Errc::kShapeMismatch, "empty loss operands");
  double first = 0.0, re = 0.0, im = 0.0;
  for (Eigen::Index f = 0; f < a.data.rows(); ++f) {
    for (Eigen::Index t = 0; t < a.data.cols(); ++t) {
      const cdouble u = a.data(f, t);
      const cdouble v = b.data(f, t);
      first += term == MagnitudeTerm::kMagnitudeDifference
                   ? std::abs(std::abs(u) - std::abs(v))
                   : std::abs(u - v);
      re += std::abs(u.real() - v.real());
      im += std::abs(u.imag() - v.imag());
    }
  }
  return (first + re + im) / static_cast<double>(a.data.size());
}

CompositeLoss LossComposite(const CtfFilter& h, const Spectrogram& s,
                            const Spectrogram& x, const Spectrogram& x_hat,
                            const Spectrogram& s_hat,
                            const LossWeights& weights, MagnitudeTerm term) {
  weights.Validate();
  CompositeLoss out;
  out.rec = LossRiMag(CtfConvolve(h, s), x, term);
  out.rvb = LossRiMag(x_hat, x, term);
  out.cln = LossRiMag(s_hat, s, term);
  out.total = out.rec + weights.rvb * out.rvb + weights.cln * out.cln;
  return out;
}

}  // namespace ctfrir
