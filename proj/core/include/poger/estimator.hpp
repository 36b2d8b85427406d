#pragma once

// Multiple re-sampling probability estimation: per-position match
// frequencies against each candidate backend, assembled into the k x M
// negative-log feature matrix. Full-text mode reproduces the naive
// all-positions solution.

#include <Eigen/Core>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "poger/backend.hpp"
#include "poger/cache.hpp"
#include "poger/selector.hpp"
#include "poger/text.hpp"

namespace poger {

struct ResampleCell {
  int position = 0;
  std::string backend;
  int n_samples = 0;
  int match_count = 0;
  double p_hat = 0.0;       // match_count / n_samples, exact
  int context_window = 0;   // b words actually requested
};

struct EstimateParams {
  int n_samples = 100;      // N
  int context_window = 20;  // b
  double temperature = 1.0; // t
  int max_new_tokens = 2;   // m
  int workers = 1;          // concurrent cells; 1 = sequential
};

// -ln of the smoothed estimate; p_hat == 0 is replaced by 1/(N+1), the
// smallest resolvable scale of an N-sample estimate.
double smoothed_neglog(double p_hat, int n_samples);

// Draws N first words for position i (context = words[max(0,i-b) .. i-1])
// and counts exact string matches against words[i]. Cache-aware.
ResampleCell estimate_at_position(const WordSequence& text, int position,
                                  LmBackend& backend,
                                  const EstimateParams& params,
                                  ResampleCache* cache = nullptr);

struct FeatureMatrix {
  enum class Mode { Estimated, Mixture };

  Eigen::MatrixXd values;             // k_effective x M, -ln smoothed p_hat
  std::vector<int> idx;               // row order, ascending text positions
  std::vector<std::string> backends;  // column order, M candidate names
  Mode mode = Mode::Estimated;
};

// One cell per (selected position, candidate). Deterministic given seeded
// synthetic backends. params.workers > 1 schedules cells concurrently;
// assembly is order-independent.
FeatureMatrix build_feature_matrix(const WordSequence& text,
                                   const SelectionResult& selection,
                                   std::span<LmBackend* const> candidates,
                                   const EstimateParams& params,
                                   ResampleCache* cache = nullptr);

// Naive full-text estimation: one cell per word position.
std::vector<ResampleCell> full_text_estimate(const WordSequence& text,
                                             LmBackend& backend,
                                             const EstimateParams& params,
                                             ResampleCache* cache = nullptr);

// Exact per-position probabilities from a white-box source at the selected
// indices; std::nullopt marks a slot the source cannot score.
struct WhiteboxColumn {
  std::string backend;
  std::vector<std::optional<double>> probs;  // length k_effective
};

// Mixture variant: white-box columns carry -ln(true p), estimated columns
// are copied through, missing slots are padded. With pad_in_log_space the
// pad value is 0.0 (reads as probability 1); otherwise the pad is
// probability 0 pushed through the usual smoothing.
FeatureMatrix build_mixture_matrix(const SelectionResult& selection,
                                   std::span<const WhiteboxColumn> whitebox,
                                   const FeatureMatrix& estimated,
                                   bool pad_in_log_space = true);

// JSONL round-trip of feature matrices keyed by record id.
std::string feature_matrix_to_json(const std::string& record_id,
                                   const FeatureMatrix& fm);
std::pair<std::string, FeatureMatrix> feature_matrix_from_json(
    const std::string& json_text);

}  // namespace poger
