#pragma once

// Run orchestration: declarative config, run directories named by config
// hash, and the verbs the CLI exposes (simulate, nominate, resample,
// featurize, train, eval, sweep, cost, detect, resume).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "poger/backend.hpp"
#include "poger/cache.hpp"
#include "poger/classifier.hpp"
#include "poger/cost.hpp"
#include "poger/embedding.hpp"
#include "poger/estimator.hpp"
#include "poger/eval.hpp"
#include "poger/world.hpp"

namespace poger {

// Process exit codes shared by every verb.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBackend = 3;
inline constexpr int kExitMismatch = 4;

struct HyperParams {
  int k = 10;
  int n_samples = 100;       // N
  double delta = 1.2;
  double temperature = 1.0;  // t
  int context_window = 20;   // b
  int max_new_tokens = 2;    // m
  int model_dim = 64;        // d
  int embed_dim = 128;       // d_e
};

struct TrainSettings {
  int batch_size = 64;
  double learning_rate = 1e-4;
  int max_epochs = 60;
  int patience = 8;
};

struct WorldSettings {
  bool enabled = true;
  WorldConfig config;
  int texts_per_source = 50;
  int min_words = 60;
  int max_words = 110;
};

struct RemoteBackendSpec {
  std::string name;
  std::string role = "candidate";  // or "proxy"
  std::string endpoint;            // env POGER_ENDPOINT_<NAME> overrides
  std::string model;
  std::string api_key_env;         // env var holding the key; never stored
  bool whitebox = false;
};

struct PipelineConfig {
  std::string task = "multiclass";     // or "binary"
  std::string features = "estimated";  // or "mixture"
  HyperParams hyper;
  TrainSettings train;
  WorldSettings world;
  std::vector<RemoteBackendSpec> remote_backends;  // used when !world.enabled
  std::string embedder = "hash";  // or "remote"
  std::string embed_endpoint;
  std::string run_root = "runs";
  std::uint64_t seed = 1;
  int workers = 1;
};

PipelineConfig config_from_json(const std::string& json_text);
PipelineConfig load_config(const std::string& path);
std::string config_to_json(const PipelineConfig& config);  // canonical
// Stable under field reordering of the source document.
std::string config_hash(const PipelineConfig& config);

struct RunPaths {
  std::string dir;
  std::string config() const;
  std::string world() const;
  std::string corpus() const;
  std::string selections() const;
  std::string features() const;
  std::string checkpoint() const;
  std::string results() const;
  std::string cache() const;
  std::string manifest() const;
  std::string history() const;
};

RunPaths run_paths(const PipelineConfig& config);

struct RunManifest {
  std::string config_hash;
  std::string version;
  double wall_time_s = 0.0;
  std::map<std::string, long long> token_totals;
  std::map<std::string, std::string> artifacts;
};

void save_manifest(const RunManifest& manifest, const std::string& path);
RunManifest load_manifest(const std::string& path);

// Lazily materialized run state shared by the verbs.
struct PipelineContext {
  PipelineConfig config;
  RunPaths paths;
  std::optional<SyntheticWorld> world;
  std::vector<std::unique_ptr<LmBackend>> candidates;
  std::unique_ptr<LmBackend> proxy;
  std::unique_ptr<EmbeddingProvider> embedder;
  std::unique_ptr<ResampleCache> cache;
  TokenLog token_log;

  std::vector<LmBackend*> candidate_ptrs() const;
};

// Builds backends/embedder/cache from the config (and world.json when the
// run dir already has one). Throws ConfigError on an invalid roster.
PipelineContext make_context(const PipelineConfig& config,
                             bool open_cache = true);

// Verbs; each returns a process exit code and writes artifacts + manifest
// under the run directory.
int cmd_simulate(const PipelineConfig& config);
int cmd_nominate(const PipelineConfig& config);
int cmd_resample(const PipelineConfig& config);
int cmd_featurize(const PipelineConfig& config);
int cmd_train(const PipelineConfig& config);
int cmd_eval(const PipelineConfig& config);
int cmd_sweep(const PipelineConfig& config, SweepParameter param,
              const std::vector<double>& grid,
              const std::vector<std::uint64_t>& seeds, long long kn_budget = 0);
int cmd_cost(const CostInputs& inputs, const std::string& method_csv,
             std::string* out_json = nullptr);
int cmd_detect(const PipelineConfig& config, const std::string& input_path,
               std::string* out_json = nullptr);
int cmd_resume(const PipelineConfig& config);

// In-memory pipeline over an explicit world + corpus; the engine behind the
// benchmark runs, sweeps and the OOD protocol.
struct WorldRunResult {
  double test_macro_f1 = 0.0;
  F1Report test_report;
  TrainHistory history;
  long long resample_tokens = 0;
  Checkpoint checkpoint;
};

struct SampleSet {
  std::vector<Sample> train, val, test;
  std::vector<std::string> class_names;
};

// Selection + estimation + embedding for every record, grouped by split.
SampleSet build_samples(const SyntheticWorld& world,
                        const std::vector<DatasetRecord>& corpus,
                        const HyperParams& hp, bool binary_task,
                        bool mixture_mode, ResampleCache* cache,
                        TokenLog* log, int workers,
                        EmbeddingProvider* embedder);

WorldRunResult run_world_pipeline(const SyntheticWorld& world,
                                  const std::vector<DatasetRecord>& corpus,
                                  const HyperParams& hp,
                                  const TrainSettings& ts, std::uint64_t seed,
                                  bool zero_context = false,
                                  bool binary_task = false,
                                  bool mixture_mode = false,
                                  ResampleCache* cache = nullptr,
                                  TokenLog* log = nullptr, int workers = 1);

}  // namespace poger
