// cqser/audio/resample.h

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

#ifndef CQSER_AUDIO_RESAMPLE_H_
#define CQSER_AUDIO_RESAMPLE_H_

#include "cqser/audio/wav.h"

namespace cqser {

// Rational-factor polyphase windowed-sinc resampler to 16 kHz (Kaiser
// window, beta 8.6). Identity for 16 kHz input; refuses to upsample
// (a source rate below 16 kHz signals a misconfigured corpus).
//
// taps_per_phase controls the prototype length (span in input samples).
// The default keeps the passband flat to within ~1 dB up to 7.9 kHz while
// attenuating everything above ~8.1 kHz by >80 dB; zero phase, duration
// preserved within one sample.
AudioBuffer ResampleTo16k(const AudioBuffer& buf, int taps_per_phase = 1024);

// Zeroth-order modified Bessel function of the first kind (power series);
// exposed for the Kaiser window and its tests.
double BesselI0(double x);

}  // namespace cqser

#endif  // CQSER_AUDIO_RESAMPLE_H_
