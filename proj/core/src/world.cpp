#include "poger/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "poger/random.hpp"

namespace poger {

namespace {

// Pronounceable unique word for an index: 2-3 consonant+vowel syllables.
std::string synth_word(int index) {
  static constexpr const char* consonants = "bdfgklmnprstvz";
  static constexpr const char* vowels = "aeiou";
  constexpr int n_syll = 14 * 5;
  std::string w;
  int x = index;
  int syllables = 2 + (index % 3 == 0 ? 1 : 0);
  for (int s = 0; s < syllables; ++s) {
    int code = x % n_syll;
    x /= n_syll;
    w += consonants[code / 5];
    w += vowels[code % 5];
  }
  // Guarantee uniqueness even when syllable codes collide across lengths.
  w += std::to_string(index % 10);
  return w;
}

struct RowBuilder {
  const WorldConfig* cfg;
  std::uint64_t language_seed;   // shared across models
  int n_domains;
  int domain_size;

  int domain_of(int word) const { return word / domain_size; }

  // Logits for one context row of one model. style_seed 0 means "no style"
  // (the shared language only).
  std::vector<double> row(const std::string& ctx_key, int row_domain,
                          std::uint64_t style_seed, double style_scale) const {
    std::vector<double> logits(static_cast<std::size_t>(cfg->vocab_size));
    std::uint64_t ctx_hash = fnv1a64(ctx_key);
    for (int w = 0; w < cfg->vocab_size; ++w) {
      double v = cfg->base_scale *
                 normal_from_key(mix_seed(mix_seed(language_seed, ctx_hash),
                                          static_cast<std::uint64_t>(w)));
      if (style_seed != 0) {
        v += style_scale *
             normal_from_key(mix_seed(mix_seed(style_seed, ctx_hash),
                                      static_cast<std::uint64_t>(w)));
      }
      if (row_domain >= 0 && domain_of(w) != row_domain) {
        v -= 30.0;  // keeps generation inside the row's domain
      }
      logits[static_cast<std::size_t>(w)] = v;
    }
    return logits;
  }
};

}  // namespace

SyntheticWorld build_world(const WorldConfig& config) {
  if (config.vocab_size < 2 || config.n_candidates < 1 ||
      config.n_domains < 1 || config.order < 1) {
    throw std::invalid_argument("invalid world config");
  }
  SyntheticWorld world;

  std::vector<std::string> vocab(static_cast<std::size_t>(config.vocab_size));
  for (int i = 0; i < config.vocab_size; ++i) {
    vocab[static_cast<std::size_t>(i)] = synth_word(i);
  }

  RowBuilder rows{&config, mix_seed(config.seed, 0xba5eba5eULL),
                  config.n_domains,
                  (config.vocab_size + config.n_domains - 1) / config.n_domains};

  // Context rows shared by every model: the empty row, every unigram row,
  // and ngram_rows sampled order-K contexts per domain.
  struct CtxRow {
    std::string key;
    int domain;  // -1: unrestricted
  };
  std::vector<CtxRow> ctx_rows;
  ctx_rows.push_back({"", -1});
  for (int w = 0; w < config.vocab_size; ++w) {
    ctx_rows.push_back({vocab[static_cast<std::size_t>(w)], rows.domain_of(w)});
  }
  if (config.order >= 2) {
    std::mt19937_64 ctx_rng(mix_seed(config.seed, 0xc0 + config.order));
    for (int g = 0; g < config.n_domains; ++g) {
      int lo = g * rows.domain_size;
      int hi = std::min(config.vocab_size, lo + rows.domain_size);
      for (int r = 0; r < config.ngram_rows; ++r) {
        std::vector<std::string> ctx;
        for (int p = 0; p < config.order; ++p) {
          int w = lo + static_cast<int>(uniform01(ctx_rng) *
                                        static_cast<double>(hi - lo));
          w = std::min(w, hi - 1);
          ctx.push_back(vocab[static_cast<std::size_t>(w)]);
        }
        ctx_rows.push_back({MarkovModel::context_key(ctx), g});
      }
    }
  }

  auto make_model = [&](const std::string& name, std::uint64_t style_seed,
                        double style_scale) {
    MarkovModel m;
    m.name = name;
    m.order = config.order;
    m.vocabulary = vocab;
    m.seed = mix_seed(config.seed, fnv1a64(name));
    for (const auto& row : ctx_rows) {
      m.logits.emplace(row.key,
                       rows.row(row.key, row.domain, style_seed, style_scale));
    }
    m.rebuild_index();
    return m;
  };

  world.sources.push_back(make_model(
      "human", mix_seed(config.seed, fnv1a64("style:human")),
      config.human_scale));
  for (int c = 1; c <= config.n_candidates; ++c) {
    std::string name = "model" + std::to_string(c);
    world.sources.push_back(make_model(
        name, mix_seed(config.seed, fnv1a64("style:" + name)),
        config.style_scale));
  }
  world.proxy = make_model("proxy",
                           mix_seed(config.seed, fnv1a64("style:proxy")),
                           config.proxy_scale);

  for (int g = 0; g < config.n_domains; ++g) {
    std::string tag =
        config.n_domains == 1 ? "main" : "domain" + std::to_string(g);
    world.domain_tags.push_back(tag);
    int lo = g * rows.domain_size;
    int hi = std::min(config.vocab_size, lo + rows.domain_size);
    std::vector<std::string> starts;
    for (int w = lo; w < hi; ++w) {
      starts.push_back(vocab[static_cast<std::size_t>(w)]);
    }
    world.domain_start_words[tag] = std::move(starts);
  }
  return world;
}

SyntheticCorpusSpec SyntheticWorld::corpus_spec(int texts_per_source,
                                                int min_words, int max_words,
                                                std::uint64_t seed) const {
  SyntheticCorpusSpec spec;
  spec.models = sources;
  spec.texts_per_source = texts_per_source;
  spec.min_words = min_words;
  spec.max_words = max_words;
  spec.domain_tags = domain_tags;
  spec.domain_start_words = domain_start_words;
  spec.seed = seed;
  return spec;
}

std::vector<DatasetRecord> build_corpus(const SyntheticCorpusSpec& spec) {
  if (spec.models.size() < 2) {
    throw std::invalid_argument("corpus needs at least 2 sources");
  }
  if (spec.texts_per_source < 1 || spec.min_words < 1 ||
      spec.max_words < spec.min_words) {
    throw std::invalid_argument("invalid corpus spec");
  }

  const int n_groups = spec.texts_per_source;
  const int n_domains = static_cast<int>(spec.domain_tags.size());

  // Group-level split: shuffle group ids, then cut at the ratios.
  std::vector<int> group_order(static_cast<std::size_t>(n_groups));
  for (int g = 0; g < n_groups; ++g) group_order[static_cast<std::size_t>(g)] = g;
  std::mt19937_64 split_rng(mix_seed(spec.seed, 0x5b717ULL));
  for (int i = n_groups - 1; i > 0; --i) {
    int j = static_cast<int>(uniform01(split_rng) * (i + 1));
    j = std::min(j, i);
    std::swap(group_order[static_cast<std::size_t>(i)],
              group_order[static_cast<std::size_t>(j)]);
  }
  long long n_train = std::llround(spec.train_ratio * n_groups);
  long long n_val = std::llround(spec.val_ratio * n_groups);
  std::vector<Split> group_split(static_cast<std::size_t>(n_groups));
  for (int rank = 0; rank < n_groups; ++rank) {
    Split s = rank < n_train              ? Split::Train
              : rank < n_train + n_val    ? Split::Val
                                          : Split::Test;
    group_split[static_cast<std::size_t>(group_order[static_cast<std::size_t>(
        rank)])] = s;
  }

  std::vector<DatasetRecord> records;
  records.reserve(static_cast<std::size_t>(n_groups) * spec.models.size());
  for (int g = 0; g < n_groups; ++g) {
    const std::string& tag =
        spec.domain_tags[static_cast<std::size_t>(g % n_domains)];
    std::mt19937_64 group_rng(
        mix_seed(spec.seed, 0x9000 + static_cast<std::uint64_t>(g)));

    // A group shares its start context across sources (same "topic").
    std::vector<std::string> start;
    auto it = spec.domain_start_words.find(tag);
    if (it != spec.domain_start_words.end() && !it->second.empty()) {
      const auto& pool = it->second;
      std::size_t pick = static_cast<std::size_t>(
          uniform01(group_rng) * static_cast<double>(pool.size()));
      pick = std::min(pick, pool.size() - 1);
      start.push_back(pool[pick]);
    }

    for (std::size_t s = 0; s < spec.models.size(); ++s) {
      const auto& model = spec.models[s];
      int length =
          spec.min_words +
          static_cast<int>(uniform01(group_rng) *
                           static_cast<double>(spec.max_words - spec.min_words + 1));
      length = std::min(length, spec.max_words);
      std::uint64_t text_seed =
          mix_seed(spec.seed, mix_seed(static_cast<std::uint64_t>(g) + 1,
                                       static_cast<std::uint64_t>(s) + 1));
      DatasetRecord rec;
      rec.id = "g" + std::to_string(g) + "_s" + std::to_string(s);
      rec.text = generate_text(model, length, text_seed, start);
      rec.label = s == 0 ? SourceLabel::human()
                         : SourceLabel::model_index(static_cast<int>(s));
      rec.domain_tag = tag;
      rec.split = group_split[static_cast<std::size_t>(g)];
      records.push_back(std::move(rec));
    }
  }
  return records;
}

void save_world_json(const SyntheticWorld& world, const std::string& path) {
  nlohmann::json j;
  j["proxy"] = nlohmann::json::parse(model_to_json(world.proxy));
  j["sources"] = nlohmann::json::array();
  for (const auto& m : world.sources) {
    j["sources"].push_back(nlohmann::json::parse(model_to_json(m)));
  }
  j["domain_tags"] = world.domain_tags;
  j["domain_start_words"] = world.domain_start_words;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write world file: " + path);
  out << j.dump();
}

SyntheticWorld load_world_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open world file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto j = nlohmann::json::parse(buf.str());
  SyntheticWorld world;
  world.proxy = model_from_json(j.at("proxy").dump());
  for (const auto& m : j.at("sources")) {
    world.sources.push_back(model_from_json(m.dump()));
  }
  world.domain_tags = j.at("domain_tags").get<std::vector<std::string>>();
  world.domain_start_words =
      j.at("domain_start_words")
          .get<std::map<std::string, std::vector<std::string>>>();
  return world;
}

}  // namespace poger
