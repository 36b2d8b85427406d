#pragma once

// Seedable order-K Markov-chain language models with exactly computable
// conditionals. These stand in for candidate LLMs so that estimation error,
// selection behavior and end-to-end detection are measurable against a
// ground-truth oracle.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "poger/text.hpp"

namespace poger {

struct MarkovModel {
  std::string name;
  int order = 1;  // K >= 1
  std::vector<std::string> vocabulary;
  // Context key -> per-word logits (row length == vocabulary size).
  // Key "" is the empty context; lookups back off to the longest stored
  // suffix of the query context.
  std::unordered_map<std::string, std::vector<double>> logits;
  std::uint64_t seed = 0;
  double temperature = 1.0;

  // Derived; rebuilt by loaders/builders via rebuild_index().
  std::unordered_map<std::string, int> vocab_index;

  void rebuild_index();
  int word_index(std::string_view w) const;  // -1 when absent

  static std::string context_key(std::span<const std::string> context);
};

// softmax(logits/t) over the vocabulary for the longest stored suffix of
// `context`. Exact and deterministic. Throws UnknownContextError when even
// the empty-context row is missing.
std::vector<double> conditional_distribution(
    const MarkovModel& model, std::span<const std::string> context,
    std::optional<double> temperature = std::nullopt);

// Ancestral sampling; reproducible under a fixed seed. Words are joined
// with single spaces.
WordSequence generate_text(const MarkovModel& model, int length,
                           std::uint64_t seed,
                           std::span<const std::string> start_context = {});

// Exact per-word probabilities of `text` under `model` (the conditional
// chain the estimator tries to recover). Position 0 is scored with the
// empty-context row. Out-of-vocabulary words score the smallest positive
// double.
std::vector<double> oracle_word_probabilities(const MarkovModel& model,
                                              const WordSequence& text,
                                              std::optional<double> temperature =
                                                  std::nullopt);

// JSON round-trip with explicit logits rows.
void save_model_json(const MarkovModel& model, const std::string& path);
MarkovModel load_model_json(const std::string& path);
std::string model_to_json(const MarkovModel& model);
MarkovModel model_from_json(const std::string& json_text);

}  // namespace poger
