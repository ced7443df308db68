// csasr/features.h

// Copyright 2026  CSASR Authors

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

#ifndef CSASR_FEATURES_H_
#define CSASR_FEATURES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "csasr/wav.h"

namespace csasr {

// T x D acoustic feature frames, row-major float32.
struct FeatureMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<float> data;
  float frame_shift_ms = 10.0f;
  float frame_length_ms = 25.0f;

  float At(int t, int d) const { return data[t * cols + d]; }
  float& At(int t, int d) { return data[t * cols + d]; }

  static FeatureMatrix Zeros(int rows, int cols) {
    FeatureMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.data.assign(static_cast<size_t>(rows) * cols, 0.0f);
    return m;
  }
};

struct SpecAugmentConfig {
  int num_freq_masks = 2;
  int max_freq_width = 10;
  int num_time_masks = 2;
  int max_time_width = 20;
  uint64_t seed = 0;
};

struct CmvnStats {
  int dim = 0;
  std::vector<double> mean;
  std::vector<double> var;
};

// Resamples by band-limited (windowed-sinc) interpolation; output length is
// round(len / factor), the sample rate is unchanged and pitch shifts with
// speed. factor 1.0 is the identity up to 1e-6.
AudioBuffer SpeedPerturb(const AudioBuffer& audio, double factor);

// 80-dim log mel filterbank with 25 ms Hamming windows every 10 ms, power
// spectrum from a next-pow2 FFT, mel range 20 Hz..Nyquist, log floor 1e-10.
// Frame count is 1 + floor((len - win) / hop); shorter audio is an error.
FeatureMatrix LogMel(const AudioBuffer& audio, int n_mels = 80,
                     double frame_length_ms = 25.0,
                     double frame_shift_ms = 10.0);

// 3-dim pitch features per frame: (NCCF probability-of-voicing proxy,
// log-pitch, delta-log-pitch). Unvoiced frames carry pitch interpolated
// from voiced neighbours with a low POV. Framing matches LogMel, so the
// frame counts agree for the same audio.
FeatureMatrix PitchFeatures(const AudioBuffer& audio,
                            double frame_length_ms = 25.0,
                            double frame_shift_ms = 10.0);

// Columnwise [mel | pitch] concatenation; frame counts must agree.
FeatureMatrix StackFeatures(const FeatureMatrix& mel,
                            const FeatureMatrix& pitch);

// Per-dimension mean/variance over the matrix; needs T >= 2.
CmvnStats ComputeCmvn(const FeatureMatrix& features);

// Standardizes each dimension to mean 0 / variance 1 using `stats`, or the
// matrix's own statistics when stats == nullptr. Dimensions with variance
// below 1e-10 are centered only.
FeatureMatrix ApplyCmvn(const FeatureMatrix& features,
                        const CmvnStats* stats = nullptr);

// Masks num_freq_masks frequency bands of exactly max_freq_width bins and
// num_time_masks spans of exactly max_time_width frames with the
// per-dimension input mean. Mask positions are drawn from `seed`; the same
// seed reproduces the same output bit for bit.
FeatureMatrix SpecAugment(const FeatureMatrix& features,
                          const SpecAugmentConfig& config);

// Binary matrix format: magic "CSFM", uint32 T, uint32 D, float32 shift_ms,
// float32 length_ms, then T*D row-major float32, everything little-endian.
void SaveFeatureMatrix(const FeatureMatrix& features, const std::string& path);
FeatureMatrix LoadFeatureMatrix(const std::string& path);

void SaveCmvnStats(const CmvnStats& stats, const std::string& path);
CmvnStats LoadCmvnStats(const std::string& path);

}  // namespace csasr

#endif  // CSASR_FEATURES_H_
