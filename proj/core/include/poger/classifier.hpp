#pragma once

// Context-compensated classifier: the k x M negative-log feature matrix is
// enriched by a small convolution + self-attention encoder, contextual word
// embeddings are projected and fused via bidirectional cross-attention, and
// an MLP head produces class log-probabilities. All gradients are analytic
// and verified against finite differences.

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "poger/errors.hpp"

namespace poger {

struct ClassifierConfig {
  int feature_dim = 0;   // M, columns of L
  int embed_dim = 128;   // d_e
  int model_dim = 64;    // d, must be divisible by n_heads
  int n_heads = 4;
  int n_classes = 2;     // 1 + M in multiclass mode
  std::vector<int> conv_widths = {5, 3, 3, 3, 3};
  int ffn_dim() const { return 2 * model_dim; }
};

struct ConvKernel {
  std::vector<Eigen::MatrixXd> taps;  // width matrices, each M x d
  Eigen::MatrixXd bias;               // 1 x d
};

struct ClassifierState {
  ClassifierConfig config;
  std::uint64_t seed = 0;

  std::vector<ConvKernel> conv;  // one layer per kernel width, outputs summed

  // Self-attention encoder block (post-norm, one layer, n_heads heads).
  Eigen::MatrixXd wq, wk, wv, wo;      // d x d
  Eigen::MatrixXd bq, bk, bv, bo;      // 1 x d
  Eigen::MatrixXd ln1_gamma, ln1_beta; // 1 x d
  Eigen::MatrixXd ffn_w1, ffn_b1;      // d x ffn, 1 x ffn
  Eigen::MatrixXd ffn_w2, ffn_b2;      // ffn x d, 1 x d
  Eigen::MatrixXd ln2_gamma, ln2_beta; // 1 x d

  // Context projection d_e -> d (identity-capable affine map).
  Eigen::MatrixXd ctx_w, ctx_b;

  // Output head: two hidden layers then class logits.
  Eigen::MatrixXd head_w1, head_b1;  // 2d x d, 1 x d
  Eigen::MatrixXd head_w2, head_b2;  // d x d, 1 x d
  Eigen::MatrixXd head_w3, head_b3;  // d x n_classes, 1 x n_classes

  // Visits every parameter tensor in a fixed order (optimizer, checkpoint
  // and gradient-check iteration all share it).
  template <typename Fn>
  void for_each_tensor(Fn&& fn);
  template <typename Fn>
  void for_each_tensor(Fn&& fn) const;
};

// Symmetric-uniform fan-in initialization, seeded; LN gains start at 1.
ClassifierState init_classifier(const ClassifierConfig& config,
                                std::uint64_t seed);

struct Sample {
  Eigen::MatrixXd L;      // k x M
  Eigen::MatrixXd E;      // n x d_e
  std::vector<int> idx;   // selected positions, ascending, |idx| == k
  int label = 0;
};

// Eq-faithful scaled dot-product attention: softmax(Q K^T / sqrt(d)) V with
// d = K.cols(). Row-stochastic weights.
Eigen::MatrixXd attention(const Eigen::MatrixXd& q, const Eigen::MatrixXd& k,
                          const Eigen::MatrixXd& v);

// Conv + self-attention encoding of L; returns L' (k x d).
Eigen::MatrixXd encode_probabilistic(const ClassifierState& state,
                                     const Eigen::MatrixXd& L);

// Gather embedding rows at idx and apply the shared projection; k x d.
Eigen::MatrixXd context_features(const ClassifierState& state,
                                 const Eigen::MatrixXd& E,
                                 std::span<const int> idx);

// Bidirectional cross-attention concat: [Att(L',C,C), Att(C,L',L')], k x 2d.
Eigen::MatrixXd fuse(const Eigen::MatrixXd& l_enc, const Eigen::MatrixXd& c);

// Class log-probabilities for one sample. zero_context forces C = 0 (the
// ablation without context compensation).
Eigen::VectorXd forward(const ClassifierState& state, const Sample& sample,
                        bool zero_context = false);

double cross_entropy_loss(const ClassifierState& state, const Sample& sample,
                          bool zero_context = false);

struct TrainConfig {
  int batch_size = 64;
  double learning_rate = 1e-4;
  int max_epochs = 60;
  int patience = 8;  // epochs without val macro-F1 improvement
  std::uint64_t seed = 0;
  bool zero_context = false;
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double val_macro_f1 = 0.0;
};

struct TrainHistory {
  std::vector<EpochStats> epochs;
  int best_epoch = -1;
  double best_val_macro_f1 = 0.0;
};

// Minibatch Adam with early stopping on validation macro F1; returns the
// best-validation state. Deterministic under fixed seeds. Throws
// DivergenceError when the loss stops being finite.
ClassifierState train_classifier(const ClassifierConfig& config,
                                 std::span<const Sample> train_set,
                                 std::span<const Sample> val_set,
                                 const TrainConfig& tc,
                                 TrainHistory* history = nullptr);

// Central finite differences of the loss against the analytic gradient for
// every parameter; returns the max relative error (optionally per tensor).
double gradient_check(const ClassifierState& state, const Sample& sample,
                      double epsilon,
                      std::map<std::string, double>* per_group = nullptr);

struct Checkpoint {
  ClassifierState state;
  std::vector<std::string> class_names;
  TrainConfig train_config;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace poger
