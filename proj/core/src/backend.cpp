#include "poger/backend.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "poger/random.hpp"

namespace poger {

namespace {

constexpr std::string_view kInstruction =
    "Please continue writing the following text, starting from the next "
    "word:";

long long whitespace_token_count(std::string_view s) {
  long long count = 0;
  bool in_word = false;
  for (char c : s) {
    bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

}  // namespace

std::string continuation_prompt(std::span<const std::string> context) {
  std::string prompt(kInstruction);
  for (const auto& w : context) {
    prompt += ' ';
    prompt += w;
  }
  return prompt;
}

std::string first_word_of(std::string_view continuation) {
  std::size_t i = 0;
  while (i < continuation.size() &&
         std::isspace(static_cast<unsigned char>(continuation[i]))) {
    ++i;
  }
  std::size_t begin = i;
  while (i < continuation.size() &&
         !std::isspace(static_cast<unsigned char>(continuation[i]))) {
    ++i;
  }
  return std::string(continuation.substr(begin, i - begin));
}

double joint_word_probability(std::span<const double> token_conditionals) {
  double p = 1.0;
  for (double c : token_conditionals) p *= c;
  return p;
}

void TokenLog::add(CallRecord rec) {
  std::lock_guard lock(mutex_);
  records_.push_back(std::move(rec));
}

long long TokenLog::total_tokens() const {
  std::lock_guard lock(mutex_);
  long long sum = 0;
  for (const auto& r : records_) sum += r.tokens_consumed;
  return sum;
}

long long TokenLog::total_calls() const {
  std::lock_guard lock(mutex_);
  return static_cast<long long>(records_.size());
}

long long TokenLog::total_tokens_for(std::string_view backend) const {
  std::lock_guard lock(mutex_);
  long long sum = 0;
  for (const auto& r : records_) {
    if (r.backend == backend) sum += r.tokens_consumed;
  }
  return sum;
}

std::vector<CallRecord> TokenLog::snapshot() const {
  std::lock_guard lock(mutex_);
  return records_;
}

void TokenLog::clear() {
  std::lock_guard lock(mutex_);
  records_.clear();
}

long long count_inference_tokens(const TokenLog& log) {
  return log.total_tokens();
}

long long count_inference_tokens(std::span<const CallRecord> records) {
  long long sum = 0;
  for (const auto& r : records) sum += r.tokens_consumed;
  return sum;
}

SyntheticBackend::SyntheticBackend(MarkovModel model, BackendId id,
                                   TokenLog* log)
    : model_(std::move(model)), id_(std::move(id)), log_(log) {
  if (model_.vocab_index.empty()) model_.rebuild_index();
}

SamplingResponse SyntheticBackend::sample_next_words(
    const SamplingRequest& req) {
  if (req.n_samples < 1) {
    throw std::invalid_argument("n_samples must be >= 1");
  }
  auto probs = conditional_distribution(model_, req.context, req.temperature);

  // Seed from the request content so results are independent of call order
  // and threading.
  std::string ctx_key = MarkovModel::context_key(req.context);
  std::uint64_t req_seed = fnv1a64(ctx_key, model_.seed ^ 0xcbf29ce484222325ULL);
  std::uint64_t t_bits;
  static_assert(sizeof(t_bits) == sizeof(req.temperature));
  std::memcpy(&t_bits, &req.temperature, sizeof(t_bits));
  req_seed = mix_seed(req_seed, t_bits);
  req_seed = mix_seed(req_seed, static_cast<std::uint64_t>(req.n_samples));

  SamplingResponse resp;
  resp.first_words.reserve(req.n_samples);
  resp.raw_continuations.reserve(req.n_samples);
  for (int j = 0; j < req.n_samples; ++j) {
    std::mt19937_64 rng(mix_seed(req_seed, static_cast<std::uint64_t>(j)));
    std::string continuation;
    std::vector<std::string> ctx(req.context.begin(), req.context.end());
    for (int step = 0; step < req.max_new_tokens; ++step) {
      const auto& dist =
          step == 0 ? probs
                    : conditional_distribution(model_, ctx, req.temperature);
      int w = categorical_sample(dist, rng);
      if (step > 0) continuation += ' ';
      continuation += model_.vocabulary[static_cast<std::size_t>(w)];
      ctx.push_back(model_.vocabulary[static_cast<std::size_t>(w)]);
      if (static_cast<int>(ctx.size()) > model_.order) ctx.erase(ctx.begin());
    }
    resp.first_words.push_back(first_word_of(continuation));
    resp.raw_continuations.push_back(std::move(continuation));
  }

  long long prompt_tokens = fixed_prompt_tokens_.value_or(
      whitespace_token_count(continuation_prompt(req.context)));
  resp.tokens_consumed =
      prompt_tokens +
      static_cast<long long>(req.n_samples) * (req.max_new_tokens - 1);
  if (log_ != nullptr) {
    log_->add(CallRecord{
        id_.name, resp.tokens_consumed, prompt_tokens,
        static_cast<long long>(req.n_samples) * req.max_new_tokens,
        req.n_samples});
  }
  return resp;
}

ProxyScores SyntheticBackend::proxy_word_probabilities(
    const WordSequence& text) {
  if (id_.role != BackendId::Role::Proxy) {
    throw UnsupportedOperationError("backend '" + id_.name +
                                    "' is not a proxy");
  }
  return ProxyScores{oracle_word_probabilities(model_, text)};
}

}  // namespace poger
