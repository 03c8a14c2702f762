// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "ctfrir/ctf.hpp"
#include "ctfrir/stft.hpp"

namespace ctfrir {

struct LossWeights {
  double rvb = 1.0;
  double cln = 1.0;
  // Throws kInvalidArgument unless both are finite and >= 0.
  void Validate() const;
};

struct CompositeLoss {
  double total = 0.0;
  double rec = 0.0;  // L(H (*) S, X)
  double rvb = 0.0;  // L(X_hat, X)
  double cln = 0.0;  // L(S_hat, S)
};

// (1 / (F T)) * ( sum | |A| - |B| | + sum |Re A - Re B| + sum |Im A - Im B| ).
// kComplexDifference replaces the first term with sum |A - B|.
double LossRiMag(const Spectrogram& a, const Spectrogram& b,
                 MagnitudeTerm term = MagnitudeTerm::kMagnitudeDifference);

CompositeLoss LossComposite(const CtfFilter& h, const Spectrogram& s,
                            const Spectrogram& x, const Spectrogram& x_hat,
                            const Spectrogram& s_hat,
                            const LossWeights& weights = {},
                            MagnitudeTerm term = MagnitudeTerm::kMagnitudeDifference);

}  // namespace ctfrir
