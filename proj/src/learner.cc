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

#include "mcfpred/learner.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcfpred/analysis.h"
#include "mcfpred/ssp.h"

namespace mcfpred {
namespace {

void validate(const TrainingSet& training) {
  if (training.duals.empty()) {
    throw EmptyTrainingSetError("training set has no duals");
  }
  const std::size_t n = training.node_count();
  if (n == 0) throw ShapeMismatchError("training duals are empty vectors");
  for (const DualVector& d : training.duals) {
    if (d.size() != n) {
      throw ShapeMismatchError("training duals differ in length");
    }
  }
}

double box_upper_of(const TrainingSet& training) {
  if (training.box_upper > 0.0) return training.box_upper;
  Price top = 0;
  for (const DualVector& d : training.duals) {
    for (Price v : d) top = std::max(top, v);
  }
  return static_cast<double>(top);
}

// Loss and a subgradient at the same point. Ties among extreme coordinates
// go to the lowest index.
double loss_and_subgradient(std::span<const double> p,
                            const TrainingSet& training,
                            std::vector<double>& grad) {
  std::fill(grad.begin(), grad.end(), 0.0);
  const double k = static_cast<double>(training.duals.size());
  double loss = 0.0;
  for (const DualVector& d : training.duals) {
    std::size_t hi = 0, lo = 0;
    for (std::size_t j = 1; j < p.size(); ++j) {
      const double v = p[j] - static_cast<double>(d[j]);
      if (v > p[hi] - static_cast<double>(d[hi])) hi = j;
      if (v < p[lo] - static_cast<double>(d[lo])) lo = j;
    }
    const double m = ((p[hi] - static_cast<double>(d[hi])) -
                      (p[lo] - static_cast<double>(d[lo]))) /
                     2.0;
    loss += std::log1p(m);
    if (hi != lo) {
      const double w = 0.5 / ((1.0 + m) * k);
      grad[hi] += w;
      grad[lo] -= w;
    }
  }
  return loss / k;
}

}  // namespace

double shifted_inf_norm(std::span<const double> v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / 2.0;
}

double shifted_error(std::span<const double> prediction,
                     std::span<const Price> dual) {
  std::vector<double> diff(prediction.size());
  for (std::size_t j = 0; j < diff.size(); ++j) {
    diff[j] = prediction[j] - static_cast<double>(dual[j]);
  }
  return shifted_inf_norm(diff);
}

double surrogate_loss(std::span<const double> prediction,
                      const TrainingSet& training) {
  validate(training);
  if (prediction.size() != training.node_count()) {
    throw ShapeMismatchError("prediction length differs from training duals");
  }
  double total = 0.0;
  for (const DualVector& d : training.duals) {
    total += std::log1p(shifted_error(prediction, d));
  }
  return total / static_cast<double>(training.duals.size());
}

LearnedPrediction learn_fixed_prediction(const TrainingSet& training,
                                         const LearnerConfig& cfg) {
  validate(training);
  const std::size_t n = training.node_count();
  const double upper = box_upper_of(training);
  const auto project = [upper](double v) { return std::clamp(v, 0.0, upper); };

  // Componentwise median of the duals, each shifted to minimum zero.
  std::vector<std::vector<double>> shifted;
  shifted.reserve(training.duals.size());
  for (const DualVector& d : training.duals) {
    const Price lo = *std::min_element(d.begin(), d.end());
    std::vector<double> s(n);
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = project(static_cast<double>(d[j] - lo));
    }
    shifted.push_back(std::move(s));
  }
  Prediction current(n);
  std::vector<double> column(shifted.size());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < shifted.size(); ++i) column[i] = shifted[i][j];
    std::sort(column.begin(), column.end());
    const std::size_t mid = column.size() / 2;
    current[j] = column.size() % 2 == 1 ? column[mid]
                                        : 0.5 * (column[mid - 1] + column[mid]);
  }

  std::vector<double> grad(n);
  double current_loss = loss_and_subgradient(current, training, grad);
  double step = cfg.initial_step_fraction * std::max(upper, 1.0);
  int accepted = 0;
  Prediction trial(n);
  std::vector<double> trial_grad(n);
  for (int it = 0; it < cfg.max_iterations && step >= cfg.min_step; ++it) {
    double norm = 0.0;
    for (double g : grad) norm += g * g;
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    const double scale = step / (norm * std::sqrt(1.0 + accepted));
    for (std::size_t j = 0; j < n; ++j) {
      trial[j] = project(current[j] - scale * grad[j]);
    }
    const double trial_loss = loss_and_subgradient(trial, training, trial_grad);
    if (trial_loss <= current_loss) {
      current.swap(trial);
      grad.swap(trial_grad);
      current_loss = trial_loss;
      ++accepted;
    } else {
      step *= 0.5;
    }
  }

  // A training dual itself can beat a stationary point of the subgradient
  // iteration; keep whichever is lower.
  for (const std::vector<double>& s : shifted) {
    const double l = surrogate_loss(s, training);
    if (l < current_loss) {
      current = s;
      current_loss = l;
    }
  }

  LearnedPrediction out;
  out.prediction = std::move(current);
  out.surrogate_loss = current_loss;
  out.accepted_steps = accepted;
  for (const DualVector& d : training.duals) {
    out.error_estimate =
        std::max(out.error_estimate, shifted_error(out.prediction, d));
  }
  return out;
}

TrainingSet gather_training_duals(std::span<const Instance> instances) {
  TrainingSet training;
  if (instances.empty()) return training;
  const NodeIndex n = instances.front().node_count();
  Cost max_cost = 0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& inst = instances[i];
    if (inst.node_count() != n) {
      throw ShapeMismatchError("sample " + std::to_string(i) + " has " +
                               std::to_string(inst.node_count()) +
                               " nodes, expected " + std::to_string(n));
    }
    max_cost = std::max(max_cost, inst.max_cost());
    try {
      SolveResult solved = ssp_solve(inst);
      lower_into_dual_box(inst, solved.flow, solved.dual);
      training.duals.push_back(std::move(solved.dual));
    } catch (const InfeasibleError& e) {
      throw InfeasibleError("sample " + std::to_string(i) + ": " + e.what());
    }
  }
  training.box_upper =
      static_cast<double>(n - 1) * static_cast<double>(max_cost);
  return training;
}

}  // namespace mcfpred
