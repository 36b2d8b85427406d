#include "poger/selector.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

namespace poger {

double error_bound(double delta, int n_samples) {
  if (!(delta > 0.0) || !std::isfinite(delta) || n_samples < 1) {
    throw InvalidBudgetError("error bound requires delta > 0 and N >= 1");
  }
  return 1.0 / (1.0 + static_cast<double>(n_samples) * delta * delta);
}

double standard_error(double p, int n_samples) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
}

std::vector<int> filter_by_error(const ProxyScores& scores,
                                 const ErrorBudget& budget) {
  const double p_min = budget.p_min();
  std::vector<int> kept;
  for (std::size_t i = 0; i < scores.probs.size(); ++i) {
    if (scores.probs[i] >= p_min) kept.push_back(static_cast<int>(i));
  }
  if (kept.empty()) {
    throw AllFilteredError("every position fell below the error bound");
  }
  return kept;
}

SelectionResult bottom_k(const WordSequence& text, const ProxyScores& scores,
                         std::span<const int> surviving, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<int> order(surviving.begin(), surviving.end());
  // Ties broken by smaller index: (prob, index) lexicographic.
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double pa = scores.probs[static_cast<std::size_t>(a)];
    double pb = scores.probs[static_cast<std::size_t>(b)];
    if (pa != pb) return pa < pb;
    return a < b;
  });
  if (static_cast<int>(order.size()) > k) order.resize(k);
  std::sort(order.begin(), order.end());

  SelectionResult result;
  result.idx = std::move(order);
  result.k_requested = k;
  result.k_effective = static_cast<int>(result.idx.size());
  for (int i : result.idx) {
    result.words.push_back(text.words[static_cast<std::size_t>(i)]);
  }
  return result;
}

SelectionResult select_representative(const WordSequence& text,
                                      const ProxyScores& scores, int k,
                                      const ErrorBudget& budget) {
  if (scores.probs.size() != text.size()) {
    throw DimensionMismatchError("proxy scores not aligned to text");
  }
  const double p_min = budget.p_min();
  SelectionResult result;
  try {
    auto surviving = filter_by_error(scores, budget);
    result = bottom_k(text, scores, surviving, k);
  } catch (const AllFilteredError&) {
    // Degenerate text: every estimate would be out of budget. Keep the k
    // positions closest to the bound from below so a feature row still
    // exists, and flag the relaxation.
    std::vector<int> all(text.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::sort(all.begin(), all.end(), [&](int a, int b) {
      double pa = scores.probs[static_cast<std::size_t>(a)];
      double pb = scores.probs[static_cast<std::size_t>(b)];
      if (pa != pb) return pa > pb;  // largest first
      return a < b;
    });
    if (static_cast<int>(all.size()) > k) all.resize(k);
    std::sort(all.begin(), all.end());
    result.idx = std::move(all);
    result.k_requested = k;
    result.k_effective = static_cast<int>(result.idx.size());
    for (int i : result.idx) {
      result.words.push_back(text.words[static_cast<std::size_t>(i)]);
    }
    result.fallback = true;
  }
  result.p_min = p_min;
  return result;
}

std::string selection_to_json(const SelectionResult& sel) {
  nlohmann::json j{{"idx", sel.idx},
                   {"words", sel.words},
                   {"k_requested", sel.k_requested},
                   {"k_effective", sel.k_effective},
                   {"p_min", sel.p_min},
                   {"fallback", sel.fallback}};
  return j.dump();
}

SelectionResult selection_from_json(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  SelectionResult sel;
  sel.idx = j.at("idx").get<std::vector<int>>();
  sel.words = j.at("words").get<std::vector<std::string>>();
  sel.k_requested = j.at("k_requested").get<int>();
  sel.k_effective = j.at("k_effective").get<int>();
  sel.p_min = j.at("p_min").get<double>();
  sel.fallback = j.value("fallback", false);
  return sel;
}

}  // namespace poger
