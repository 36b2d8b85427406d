#pragma once

// Wire-protocol clients: an OpenAI-compatible completion backend for
// re-sampling and an embedding service client. Both retry with exponential
// backoff and bound the number of in-flight requests.

#include <memory>
#include <string>

#include "poger/backend.hpp"
#include "poger/embedding.hpp"

namespace poger {

struct RemoteBackendConfig {
  std::string name;
  std::string base_url;  // e.g. http://127.0.0.1:8089
  std::string completions_path = "/v1/completions";
  std::string model;     // "model" field of the request body
  std::string api_key;   // optional bearer token
  BackendId::Role role = BackendId::Role::Candidate;
  int max_attempts = 5;
  int backoff_base_ms = 100;  // doubles per attempt
  int max_inflight = 4;
  int max_n_per_request = 0;  // chunk requests when > 0
  int timeout_s = 30;
};

// POST {model, prompt, temperature, max_tokens, n} ->
// {choices:[{text}], usage:{completion_tokens, prompt_tokens}}.
class RemoteBackend final : public LmBackend {
 public:
  explicit RemoteBackend(RemoteBackendConfig config, TokenLog* log = nullptr);
  ~RemoteBackend() override;

  const BackendId& id() const override;
  SamplingResponse sample_next_words(const SamplingRequest& req) override;
  // Candidates are black boxes: scoring is unsupported.
  ProxyScores proxy_word_probabilities(const WordSequence& text) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct RemoteEmbedderConfig {
  std::string base_url;
  std::string path = "/v1/word-embeddings";
  std::string api_key;
  int dim = 128;
  int max_attempts = 5;
  int backoff_base_ms = 100;
  int timeout_s = 30;
};

// POST {text} -> {vectors: n x d_e}; the provider is responsible for word
// alignment. Throws AlignmentError when the row count does not match the
// word count.
class RemoteEmbedder final : public EmbeddingProvider {
 public:
  explicit RemoteEmbedder(RemoteEmbedderConfig config);
  ~RemoteEmbedder() override;

  int dim() const override;
  Eigen::MatrixXd embed(const WordSequence& text) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace poger
