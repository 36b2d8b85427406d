#pragma once

// Uniform interface to candidate generators and the proxy model: next-word
// sampling for re-sampling, and per-word probability scoring for the proxy.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poger/errors.hpp"
#include "poger/markov.hpp"
#include "poger/text.hpp"

namespace poger {

struct BackendId {
  enum class Kind { Remote, LocalSynthetic };
  enum class Role { Candidate, Proxy };

  std::string name;
  Kind kind = Kind::LocalSynthetic;
  Role role = Role::Candidate;
};

struct SamplingRequest {
  std::vector<std::string> context;  // may be empty
  double temperature = 1.0;
  int n_samples = 1;
  int max_new_tokens = 2;
};

struct SamplingResponse {
  // Exactly n_samples entries; an empty string is the sentinel for a
  // continuation that produced no words (counts as a miss for every target).
  std::vector<std::string> first_words;
  std::vector<std::string> raw_continuations;
  long long tokens_consumed = 0;
};

// Per-word probabilities from the proxy model, aligned to WordSequence
// positions; each value in (0,1].
struct ProxyScores {
  std::vector<double> probs;
};

// The continuation instruction sent before the context words. The context
// is appended joined with single spaces.
std::string continuation_prompt(std::span<const std::string> context);

// Trim leading whitespace, take the first whitespace-delimited token.
// Returns "" when the continuation has no words.
std::string first_word_of(std::string_view continuation);

// Word probability for a word split into tokens: the product of the token
// conditionals.
double joint_word_probability(std::span<const double> token_conditionals);

struct CallRecord {
  std::string backend;
  long long tokens_consumed = 0;
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
  int n_samples = 0;
};

// Thread-safe append-only log of backend calls; the basis of inference-cost
// accounting.
class TokenLog {
 public:
  void add(CallRecord rec);
  long long total_tokens() const;
  long long total_calls() const;
  long long total_tokens_for(std::string_view backend) const;
  std::vector<CallRecord> snapshot() const;
  void clear();

 private:
  mutable std::mutex mutex_;
  std::vector<CallRecord> records_;
};

long long count_inference_tokens(const TokenLog& log);
long long count_inference_tokens(std::span<const CallRecord> records);

class LmBackend {
 public:
  virtual ~LmBackend() = default;

  virtual const BackendId& id() const = 0;

  // Returns exactly req.n_samples first words. Thread-safe; implementations
  // honor their own in-flight bounds. Throws BackendUnavailableError /
  // RateLimitedError on transport-level failure.
  virtual SamplingResponse sample_next_words(const SamplingRequest& req) = 0;

  // Proxy-only scoring; throws UnsupportedOperationError on candidates that
  // cannot score.
  virtual ProxyScores proxy_word_probabilities(const WordSequence& text) = 0;
};

// Local synthetic backend over a Markov model. Sampling is deterministic
// per request content (independent of call order and threading).
class SyntheticBackend final : public LmBackend {
 public:
  SyntheticBackend(MarkovModel model, BackendId id, TokenLog* log = nullptr);

  const BackendId& id() const override { return id_; }
  SamplingResponse sample_next_words(const SamplingRequest& req) override;
  ProxyScores proxy_word_probabilities(const WordSequence& text) override;

  const MarkovModel& model() const { return model_; }

  // When set, every request reports this prompt token count instead of the
  // whitespace token count of the rendered prompt (cost-accounting stub).
  void set_fixed_prompt_tokens(std::optional<long long> n) {
    fixed_prompt_tokens_ = n;
  }
  void set_token_log(TokenLog* log) { log_ = log; }

 private:
  MarkovModel model_;
  BackendId id_;
  TokenLog* log_ = nullptr;
  std::optional<long long> fixed_prompt_tokens_;
};

}  // namespace poger
