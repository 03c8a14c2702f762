// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <stdexcept>
#include <string>

namespace ctfrir {

enum class Errc {
  kInvalidArgument = 1,
  kEmptySignal,
  kInvalidConfig,
  kShapeMismatch,
  kOutLenTooLarge,
  kDegenerateInput,
  kTooFewFrames,
  kNonFiniteLoss,
  kRirTooLong,
  kInvalidSpec,
  kNonFinite,
  kPeakNotFound,
  kZeroEnergy,
  kInsufficientDecayRange,
  kTooShort,
  kInvalidGeometry,
  kInvalidTarget,
  kZeroNoise,
  kZeroSpeech,
  kZeroRir,
  kLengthMismatch,
  kZeroVariance,
  kIo,
  kFormat,
  kSampleRateMismatch,
};

const char* ErrcName(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void Fail(Errc code, const std::string& what);

inline void Require(bool cond, Errc code, const char* what) {
  if (!cond) Fail(code, what);
}

}  // namespace ctfrir
