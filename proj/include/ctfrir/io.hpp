// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>
#include <string_view>

#include "ctfrir/ctf.hpp"
#include "ctfrir/signal.hpp"

namespace ctfrir {

// Mono RIFF/WAVE. Reads 32-bit float or 16-bit PCM, writes 32-bit float.
AudioSignal ReadWav(const std::string& path);
void WriteWav(const std::string& path, const AudioSignal& signal);

// CTF1: "CTF1", u32 F, L, sample_rate, win_len, hop, then F * L (re, im)
// float32 pairs in band-major order. All little-endian.
CtfFilter ReadCtf(const std::string& path);
void WriteCtf(const std::string& path, const CtfFilter& filter);

// Writes to a sibling temporary file and renames it over |path|.
void WriteFileAtomic(const std::string& path, std::string_view bytes);

}  // namespace ctfrir
