#pragma once

// Contextual word-embedding providers. The pipeline only needs "one vector
// per word of the input text"; a remote encoder service and a deterministic
// hashed n-gram embedder both satisfy that.

#include <Eigen/Core>
#include <cstdint>

#include "poger/text.hpp"

namespace poger {

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual int dim() const = 0;
  // n x d_e, one row per word.
  virtual Eigen::MatrixXd embed(const WordSequence& text) = 0;
};

// Offline embedder: hashed word/neighbor/char-n-gram features, L2-normalized
// per row. Deterministic under a fixed seed; the same word in different
// contexts gets different vectors through the neighbor features.
class HashEmbedder final : public EmbeddingProvider {
 public:
  explicit HashEmbedder(int dim = 128, std::uint64_t seed = 17,
                        int context_window = 2);

  int dim() const override { return dim_; }
  Eigen::MatrixXd embed(const WordSequence& text) override;

 private:
  int dim_;
  std::uint64_t seed_;
  int window_;
};

}  // namespace poger
