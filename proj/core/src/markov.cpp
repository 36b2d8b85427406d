#include "poger/markov.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "poger/random.hpp"

namespace poger {

namespace {

constexpr char kKeySep = '\x1f';

std::vector<double> softmax_over_temperature(const std::vector<double>& logits,
                                             double t) {
  std::vector<double> probs(logits.size());
  double max_scaled = -std::numeric_limits<double>::infinity();
  for (double v : logits) max_scaled = std::max(max_scaled, v / t);
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] / t - max_scaled);
    sum += probs[i];
  }
  for (double& p : probs) p /= sum;
  return probs;
}

}  // namespace

void MarkovModel::rebuild_index() {
  vocab_index.clear();
  vocab_index.reserve(vocabulary.size());
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    vocab_index.emplace(vocabulary[i], static_cast<int>(i));
  }
}

int MarkovModel::word_index(std::string_view w) const {
  if (!vocab_index.empty()) {
    auto it = vocab_index.find(std::string(w));
    return it == vocab_index.end() ? -1 : it->second;
  }
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    if (vocabulary[i] == w) return static_cast<int>(i);
  }
  return -1;
}

std::string MarkovModel::context_key(std::span<const std::string> context) {
  std::string key;
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (i > 0) key += kKeySep;
    key += context[i];
  }
  return key;
}

std::vector<double> conditional_distribution(
    const MarkovModel& model, std::span<const std::string> context,
    std::optional<double> temperature) {
  const double t = temperature.value_or(model.temperature);
  const int max_len =
      std::min<int>(model.order, static_cast<int>(context.size()));
  for (int len = max_len; len >= 0; --len) {
    auto suffix = context.subspan(context.size() - len, len);
    auto it = model.logits.find(MarkovModel::context_key(suffix));
    if (it != model.logits.end()) {
      return softmax_over_temperature(it->second, t);
    }
  }
  throw UnknownContextError("model '" + model.name +
                            "' has no empty-context row");
}

WordSequence generate_text(const MarkovModel& model, int length,
                           std::uint64_t seed,
                           std::span<const std::string> start_context) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> context(start_context.begin(), start_context.end());
  std::string text;
  for (int i = 0; i < length; ++i) {
    auto probs = conditional_distribution(model, context);
    int w = categorical_sample(probs, rng);
    if (i > 0) text += ' ';
    text += model.vocabulary[static_cast<std::size_t>(w)];
    context.push_back(model.vocabulary[static_cast<std::size_t>(w)]);
    if (static_cast<int>(context.size()) > model.order) {
      context.erase(context.begin());
    }
  }
  return tokenize_words(text);
}

std::vector<double> oracle_word_probabilities(
    const MarkovModel& model, const WordSequence& text,
    std::optional<double> temperature) {
  std::vector<double> probs;
  probs.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    std::size_t ctx_len = std::min<std::size_t>(i, model.order);
    std::span<const std::string> ctx(text.words.data() + i - ctx_len, ctx_len);
    auto dist = conditional_distribution(model, ctx, temperature);
    int w = model.word_index(text.words[i]);
    double p = w >= 0 ? dist[static_cast<std::size_t>(w)]
                      : std::numeric_limits<double>::min();
    probs.push_back(std::max(p, std::numeric_limits<double>::min()));
  }
  return probs;
}

std::string model_to_json(const MarkovModel& model) {
  nlohmann::json rows = nlohmann::json::object();
  // Sorted keys keep serialization deterministic.
  std::vector<const std::string*> keys;
  keys.reserve(model.logits.size());
  for (const auto& [k, v] : model.logits) keys.push_back(&k);
  std::sort(keys.begin(), keys.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  for (const auto* k : keys) rows[*k] = model.logits.at(*k);
  nlohmann::json j{{"name", model.name},
                   {"order", model.order},
                   {"vocabulary", model.vocabulary},
                   {"seed", model.seed},
                   {"temperature", model.temperature},
                   {"logits", std::move(rows)}};
  return j.dump();
}

MarkovModel model_from_json(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  MarkovModel model;
  model.name = j.at("name").get<std::string>();
  model.order = j.at("order").get<int>();
  model.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
  model.seed = j.at("seed").get<std::uint64_t>();
  model.temperature = j.at("temperature").get<double>();
  for (const auto& [key, row] : j.at("logits").items()) {
    auto values = row.get<std::vector<double>>();
    if (values.size() != model.vocabulary.size()) {
      throw std::runtime_error("logits row does not cover the vocabulary");
    }
    model.logits.emplace(key, std::move(values));
  }
  model.rebuild_index();
  return model;
}

void save_model_json(const MarkovModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << model_to_json(model);
}

MarkovModel load_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace poger
