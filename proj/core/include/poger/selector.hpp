#pragma once

// Error-aware representative-word selection: nominate low-probability words
// via the proxy scores, drop positions whose estimate would violate the
// relative-error budget, keep the bottom-k of what survives.

#include <span>
#include <string>
#include <vector>

#include "poger/backend.hpp"
#include "poger/errors.hpp"
#include "poger/text.hpp"

namespace poger {

// Minimum true probability for which an N-sample frequency estimate keeps
// SE(p_hat) <= delta * p: 1 / (1 + N * delta^2).
double error_bound(double delta, int n_samples);

// sqrt(p * (1 - p) / N).
double standard_error(double p, int n_samples);

struct ErrorBudget {
  double delta = 1.2;
  int n_samples = 100;

  double p_min() const { return error_bound(delta, n_samples); }
};

// Positions whose proxy probability >= p_min, ascending. Throws
// AllFilteredError when nothing survives.
std::vector<int> filter_by_error(const ProxyScores& scores,
                                 const ErrorBudget& budget);

struct SelectionResult {
  std::vector<int> idx;             // strictly ascending text positions
  std::vector<std::string> words;   // words[i] = text.words[idx[i]]
  int k_requested = 0;
  int k_effective = 0;              // |idx| <= k_requested
  double p_min = 0.0;
  bool fallback = false;  // set when the all-filtered fallback was taken
};

// The k smallest surviving probabilities; ties broken by smaller index.
// idx comes back ascending regardless of probability order.
SelectionResult bottom_k(const WordSequence& text, const ProxyScores& scores,
                         std::span<const int> surviving, int k);

// filter_by_error + bottom_k with the documented fallback: when every
// position is filtered out, relax to the k largest-probability positions
// below p_min and set the fallback flag.
SelectionResult select_representative(const WordSequence& text,
                                      const ProxyScores& scores, int k,
                                      const ErrorBudget& budget);

// JSON {idx, words, k_requested, k_effective, p_min, fallback} for caching
// and audit.
std::string selection_to_json(const SelectionResult& sel);
SelectionResult selection_from_json(const std::string& json_text);

}  // namespace poger
