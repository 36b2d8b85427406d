#pragma once

// Synthetic multi-source corpora: one Markov model plays "human", M models
// play candidate generators, and a near-average model serves as the proxy.
// Everything is derived deterministically from seeds so that true
// probabilities exist for every claim the pipeline makes.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "poger/markov.hpp"
#include "poger/text.hpp"

namespace poger {

struct SyntheticCorpusSpec {
  std::vector<MarkovModel> models;  // index 0 = human source, 1..M candidates
  int texts_per_source = 10;
  int min_words = 40;
  int max_words = 80;
  std::vector<std::string> domain_tags = {"main"};
  // Start words per domain; a group's start context launches the chain into
  // that domain's vocabulary.
  std::map<std::string, std::vector<std::string>> domain_start_words;
  double train_ratio = 0.7;
  double val_ratio = 0.2;  // test gets the remainder
  std::uint64_t seed = 1;
};

// Labeled, split records. Texts of one group share a start context and the
// split is assigned at group level.
std::vector<DatasetRecord> build_corpus(const SyntheticCorpusSpec& spec);

struct WorldConfig {
  int vocab_size = 200;
  int order = 2;
  int n_candidates = 4;
  int ngram_rows = 2000;     // materialized order-K context rows per domain
  double base_scale = 1.8;   // spread of the shared language logits
  double style_scale = 1.0;  // per-candidate deviation from the base
  double human_scale = 1.2;  // the human source's own deviation
  double proxy_scale = 0.25; // proxy stays close to the shared base
  int n_domains = 1;
  std::uint64_t seed = 7;
};

struct SyntheticWorld {
  std::vector<MarkovModel> sources;  // [0] = human, [1..M] = candidates
  MarkovModel proxy;
  std::vector<std::string> domain_tags;
  std::map<std::string, std::vector<std::string>> domain_start_words;

  int n_candidates() const { return static_cast<int>(sources.size()) - 1; }

  SyntheticCorpusSpec corpus_spec(int texts_per_source, int min_words,
                                  int max_words, std::uint64_t seed) const;
};

SyntheticWorld build_world(const WorldConfig& config);

void save_world_json(const SyntheticWorld& world, const std::string& path);
SyntheticWorld load_world_json(const std::string& path);

}  // namespace poger
