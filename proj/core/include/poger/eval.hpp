#pragma once

// Evaluation protocols over a trained pipeline: in-distribution vs
// out-of-distribution macro F1, and parameter sweeps with shared seeds.
// The pipeline itself is injected as a functor so the protocols stay
// independent of how features are produced.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "poger/classifier.hpp"
#include "poger/metrics.hpp"
#include "poger/text.hpp"

namespace poger {

// Evaluate a trained state over samples; fills `table` when provided.
F1Report evaluate_samples(const ClassifierState& state,
                          std::span<const Sample> samples,
                          MacroAveraging averaging = MacroAveraging::PresentOnly,
                          bool zero_context = false,
                          ConfusionTable* table = nullptr);

// Trains on `train`/`val` and returns test macro F1.
using TrainEvalFn = std::function<double(
    const std::vector<const DatasetRecord*>& train,
    const std::vector<const DatasetRecord*>& val,
    const std::vector<const DatasetRecord*>& test)>;

struct OodReport {
  double in_dist_f1 = 0.0;
  double ood_f1 = 0.0;
  double relative_drop = 0.0;  // (ood - ind) / ind; negative = degradation
};

// Train on train_tag's train/val splits; in-dist tests on train_tag's test
// split, OOD tests on every test_tag record. Throws MissingDomainError when
// a tag has no records.
OodReport ood_protocol(const std::vector<DatasetRecord>& corpus,
                       const std::string& train_tag,
                       const std::string& test_tag,
                       const TrainEvalFn& pipeline);

enum class SweepParameter { SamplingTimes, Temperature, Delta, KNBudget };

std::string sweep_parameter_name(SweepParameter p);

struct SweepPoint {
  SweepParameter param;
  double value = 0.0;
  int k = 0;
  int n = 0;
  std::uint64_t seed = 0;
  double macro_f1 = 0.0;
  long long total_tokens = 0;
};

// One full run per (grid value, seed). For KNBudget the grid values are k
// and n = kn_budget / k; otherwise k and n are whatever the runner's
// defaults say (n = value for SamplingTimes).
using SweepRunFn = std::function<std::pair<double, long long>(
    SweepParameter, double value, int k, int n, std::uint64_t seed)>;

std::vector<SweepPoint> sweep(SweepParameter param,
                              std::span<const double> grid,
                              std::span<const std::uint64_t> seeds,
                              const SweepRunFn& run, int default_k,
                              int default_n, long long kn_budget = 0);

void save_sweep_csv(std::span<const SweepPoint> points,
                    const std::string& path);
void save_sweep_jsonl(std::span<const SweepPoint> points,
                      const std::string& path);

}  // namespace poger
