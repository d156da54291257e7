// Copyright 2026 The mcfpred Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Learning a fixed dual prediction from sample optimal duals.
//
// The surrogate is the mean of log(1 + m_i) where m_i is the infinity-norm
// error of the prediction against sample i after the best constant shift,
// which has the closed form (max_j d_j - min_j d_j) / 2 for d = p_hat - p^(i).
// The per-sample shift is therefore eliminated exactly and the remaining
// problem is minimized by projected subgradient steps over [0, box_upper]^n.

#ifndef MCFPRED_LEARNER_H_
#define MCFPRED_LEARNER_H_

#include <span>
#include <vector>

#include "mcfpred/core.h"

namespace mcfpred {

class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};

class EmptyTrainingSetError : public Error {
 public:
  using Error::Error;
};

struct TrainingSet {
  std::vector<DualVector> duals;
  // Upper end of the prediction box, (n-1)C for duals gathered by
  // gather_training_duals. Non-positive means "largest training value".
  double box_upper = 0.0;

  std::size_t node_count() const {
    return duals.empty() ? 0 : duals.front().size();
  }
};

struct LearnerConfig {
  int max_iterations = 2000;
  // Initial step as a fraction of the box width.
  double initial_step_fraction = 0.25;
  double min_step = 1e-7;
};

struct LearnedPrediction {
  Prediction prediction;
  double surrogate_loss = 0.0;
  // max_i min_shift ||p_hat - p^(i) + shift||_inf
  double error_estimate = 0.0;
  int accepted_steps = 0;
};

// min over shifts of ||v + shift * 1||_inf.
double shifted_inf_norm(std::span<const double> v);

// Shift-eliminated error of the prediction against one dual.
double shifted_error(std::span<const double> prediction,
                     std::span<const Price> dual);

double surrogate_loss(std::span<const double> prediction,
                      const TrainingSet& training);

LearnedPrediction learn_fixed_prediction(const TrainingSet& training,
                                         const LearnerConfig& cfg = {});

// Optimal duals of each instance via ssp_solve, lowered into [0, (n-1)C].
// Throws ShapeMismatchError on differing node counts and InfeasibleError
// naming the offending sample.
TrainingSet gather_training_duals(std::span<const Instance> instances);

}  // namespace mcfpred

#endif  // MCFPRED_LEARNER_H_
