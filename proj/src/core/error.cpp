// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/error.hpp"

namespace ctfrir {

const char* ErrcName(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kEmptySignal: return "EmptySignal";
    case Errc::kInvalidConfig: return "InvalidConfig";
    case Errc::kShapeMismatch: return "ShapeMismatch";
    case Errc::kOutLenTooLarge: return "OutLenTooLarge";
    case Errc::kDegenerateInput: return "DegenerateInput";
    case Errc::kTooFewFrames: return "TooFewFrames";
    case Errc::kNonFiniteLoss: return "NonFiniteLoss";
    case Errc::kRirTooLong: return "RirTooLong";
    case Errc::kInvalidSpec: return "InvalidSpec";
    case Errc::kNonFinite: return "NonFinite";
    case Errc::kPeakNotFound: return "PeakNotFound";
    case Errc::kZeroEnergy: return "ZeroEnergy";
    case Errc::kInsufficientDecayRange: return "InsufficientDecayRange";
    case Errc::kTooShort: return "TooShort";
    case Errc::kInvalidGeometry: return "InvalidGeometry";
    case Errc::kInvalidTarget: return "InvalidTarget";
    case Errc::kZeroNoise: return "ZeroNoise";
    case Errc::kZeroSpeech: return "ZeroSpeech";
    case Errc::kZeroRir: return "ZeroRir";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kZeroVariance: return "ZeroVariance";
    case Errc::kIo: return "IoError";
    case Errc::kFormat: return "FormatError";
    case Errc::kSampleRateMismatch: return "SampleRateMismatch";
  }
  return "Unknown";
}

void Fail(Errc code, const std::string& what) {
  throw Error(code, std::string(ErrcName(code)) + ": " + what);
}

}  // namespace ctfrir
