// csasr/ctc.h

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

#ifndef CSASR_CTC_H_
#define CSASR_CTC_H_

#include <vector>

namespace csasr {

// T x V log-probabilities, one normalized distribution per frame. Blank is
// pinned to id 0, matching the tokenizer's reserved id.
struct LogProbMatrix {
  int num_frames = 0;
  int vocab_size = 0;
  std::vector<double> values;  // row-major
  int blank_id = 0;

  double At(int t, int v) const { return values[t * vocab_size + v]; }
  double& At(int t, int v) { return values[t * vocab_size + v]; }
};

// Throws unless T >= 1, V >= 2, blank in range and every row exp-sums to 1
// within 1e-6.
void ValidateLogProbMatrix(const LogProbMatrix& logp);

// -log P(labels | logp), summing over all alignment paths that collapse
// (remove repeats, then blanks) to `labels`. Standard forward recursion over
// the 2L+1 extended sequence, entirely in log space. Labels must lie in
// [1, V); infeasible instances (T < L + adjacent-duplicate count) throw
// rather than returning infinity.
double CtcLoss(const LogProbMatrix& logp, const std::vector<int>& labels);

// Gradient of CtcLoss with respect to the unnormalized logits z for which
// logp == log_softmax(z). Row-major T x V; every row sums to zero.
std::vector<double> CtcGrad(const LogProbMatrix& logp,
                            const std::vector<int>& labels);

// Mean cross entropy, -1/|labels| * sum_t logp[t, labels[t]]. Requires
// T == |labels|.
double CeLoss(const LogProbMatrix& logp, const std::vector<int>& labels);

// alpha * ctc + (1 - alpha) * ce. alpha must lie in [0, 1].
double CombineLosses(double ctc, double ce, double alpha);

struct LossBreakdown {
  double ctc_loss = 0.0;
  double ce_loss = 0.0;
  double alpha = 0.3;
  double combined = 0.0;
};

// Best-path decoding: per-frame argmax (ties to the lower id), collapse
// adjacent repeats, drop blanks.
std::vector<int> GreedyDecode(const LogProbMatrix& logp);

}  // namespace csasr

#endif  // CSASR_CTC_H_
