// cqser/audio/wav.h

// Copyright 2026  CQSER Project Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CQSER_AUDIO_WAV_H_
#define CQSER_AUDIO_WAV_H_

#include <string>
#include <vector>

namespace cqser {

// Mono audio, samples nominally in [-1, 1].
struct AudioBuffer {
  std::vector<float> samples;
  int sample_rate = 0;

  bool Empty() const { return samples.empty(); }
  double DurationSeconds() const {
    return sample_rate > 0
               ? static_cast<double>(samples.size()) / sample_rate
               : 0.0;
  }
};

// Computes sqrt(mean(x^2)) in double precision.
double Rms(const AudioBuffer& buf);

// Reads a RIFF WAV file. Accepts 16-bit integer PCM and 32-bit IEEE float,
// 1 or 2 channels. Stereo is averaged to mono; 16-bit samples are scaled
// by 1/32768. The source sample rate is passed through unchanged.
// Throws std::runtime_error for malformed headers, unsupported encodings
// and empty audio.
AudioBuffer ReadWav(const std::string& path);

// Writers used by the synthetic-corpus generator and tests.
void WriteWavFloat32(const std::string& path, const AudioBuffer& buf);
void WriteWavInt16(const std::string& path, const AudioBuffer& buf);

}  // namespace cqser

#endif  // CQSER_AUDIO_WAV_H_
