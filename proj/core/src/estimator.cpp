#include "poger/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

namespace poger {

double smoothed_neglog(double p_hat, int n_samples) {
  double p = p_hat == 0.0 ? 1.0 / (static_cast<double>(n_samples) + 1.0)
                          : p_hat;
  return -std::log(p);
}

namespace {

std::vector<std::string> context_before(const WordSequence& text, int position,
                                        int window) {
  int begin = std::max(0, position - window);
  return std::vector<std::string>(text.words.begin() + begin,
                                  text.words.begin() + position);
}

ResampleCell estimate_cell(const WordSequence& text, int position,
                           LmBackend& backend, const EstimateParams& params,
                           ResampleCache* cache) {
  if (position < 0 || position >= static_cast<int>(text.size())) {
    throw IndexError("position out of range");
  }
  auto context = context_before(text, position, params.context_window);
  const std::string& target = text.words[static_cast<std::size_t>(position)];

  ResampleCell cell;
  cell.position = position;
  cell.backend = backend.id().name;
  cell.n_samples = params.n_samples;
  cell.context_window = params.context_window;

  if (cache != nullptr) {
    auto key = ResampleCache::make_key(cell.backend, context, target,
                                       params.temperature, params.n_samples);
    if (auto hit = cache->lookup(key)) {
      cell.match_count = *hit;
      cell.p_hat = static_cast<double>(cell.match_count) /
                   static_cast<double>(cell.n_samples);
      return cell;
    }
  }

  SamplingRequest req;
  req.context = context;
  req.temperature = params.temperature;
  req.n_samples = params.n_samples;
  req.max_new_tokens = params.max_new_tokens;
  auto resp = backend.sample_next_words(req);

  int matches = 0;
  for (const auto& w : resp.first_words) {
    if (w == target) ++matches;
  }
  cell.match_count = matches;
  cell.p_hat =
      static_cast<double>(matches) / static_cast<double>(cell.n_samples);

  if (cache != nullptr) {
    cache->store(cell.backend, context, target, params.temperature,
                 params.n_samples, matches);
  }
  return cell;
}

void run_cells(int n_cells, int workers,
               const std::function<void(int)>& body) {
  if (workers <= 1 || n_cells <= 1) {
    for (int i = 0; i < n_cells; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= n_cells) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int n_threads = std::min(workers, n_cells);
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

ResampleCell estimate_at_position(const WordSequence& text, int position,
                                  LmBackend& backend,
                                  const EstimateParams& params,
                                  ResampleCache* cache) {
  return estimate_cell(text, position, backend, params, cache);
}

FeatureMatrix build_feature_matrix(const WordSequence& text,
                                   const SelectionResult& selection,
                                   std::span<LmBackend* const> candidates,
                                   const EstimateParams& params,
                                   ResampleCache* cache) {
  if (selection.idx.empty()) {
    throw ShapeError("selection is empty");
  }
  const int k = static_cast<int>(selection.idx.size());
  const int m = static_cast<int>(candidates.size());

  FeatureMatrix fm;
  fm.values.resize(k, m);
  fm.idx = selection.idx;
  fm.mode = FeatureMatrix::Mode::Estimated;
  for (auto* backend : candidates) fm.backends.push_back(backend->id().name);

  run_cells(k * m, params.workers, [&](int flat) {
    int row = flat / m;
    int col = flat % m;
    auto cell = estimate_cell(text, selection.idx[static_cast<std::size_t>(row)],
                              *candidates[static_cast<std::size_t>(col)],
                              params, cache);
    fm.values(row, col) = smoothed_neglog(cell.p_hat, cell.n_samples);
  });
  return fm;
}

std::vector<ResampleCell> full_text_estimate(const WordSequence& text,
                                             LmBackend& backend,
                                             const EstimateParams& params,
                                             ResampleCache* cache) {
  std::vector<ResampleCell> cells(text.size());
  run_cells(static_cast<int>(text.size()), params.workers, [&](int i) {
    cells[static_cast<std::size_t>(i)] =
        estimate_cell(text, i, backend, params, cache);
  });
  return cells;
}

FeatureMatrix build_mixture_matrix(const SelectionResult& selection,
                                   std::span<const WhiteboxColumn> whitebox,
                                   const FeatureMatrix& estimated,
                                   bool pad_in_log_space) {
  const int k = static_cast<int>(estimated.values.rows());
  if (k != selection.k_effective) {
    throw DimensionMismatchError("estimated matrix does not match selection");
  }
  FeatureMatrix fm = estimated;
  fm.mode = FeatureMatrix::Mode::Mixture;
  for (const auto& col : whitebox) {
    auto it = std::find(fm.backends.begin(), fm.backends.end(), col.backend);
    if (it == fm.backends.end()) {
      throw DimensionMismatchError("white-box column '" + col.backend +
                                   "' is not in the candidate roster");
    }
    if (static_cast<int>(col.probs.size()) != k) {
      throw DimensionMismatchError("white-box column '" + col.backend +
                                   "' has wrong length");
    }
    int j = static_cast<int>(it - fm.backends.begin());
    for (int i = 0; i < k; ++i) {
      const auto& p = col.probs[static_cast<std::size_t>(i)];
      if (p.has_value()) {
        fm.values(i, j) = -std::log(*p);
      } else if (pad_in_log_space) {
        fm.values(i, j) = 0.0;  // reads as probability 1
      } else {
        fm.values(i, j) = smoothed_neglog(0.0, 1);  // probability-space pad
      }
    }
  }
  return fm;
}

std::string feature_matrix_to_json(const std::string& record_id,
                                   const FeatureMatrix& fm) {
  std::vector<std::vector<double>> rows(
      static_cast<std::size_t>(fm.values.rows()));
  for (Eigen::Index i = 0; i < fm.values.rows(); ++i) {
    rows[static_cast<std::size_t>(i)].assign(
        fm.values.row(i).begin(), fm.values.row(i).end());
  }
  nlohmann::json j{
      {"id", record_id},
      {"mode",
       fm.mode == FeatureMatrix::Mode::Estimated ? "estimated" : "mixture"},
      {"idx", fm.idx},
      {"backends", fm.backends},
      {"values", rows}};
  return j.dump();
}

std::pair<std::string, FeatureMatrix> feature_matrix_from_json(
    const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  FeatureMatrix fm;
  fm.idx = j.at("idx").get<std::vector<int>>();
  fm.backends = j.at("backends").get<std::vector<std::string>>();
  fm.mode = j.at("mode").get<std::string>() == "mixture"
                ? FeatureMatrix::Mode::Mixture
                : FeatureMatrix::Mode::Estimated;
  auto rows = j.at("values").get<std::vector<std::vector<double>>>();
  fm.values.resize(static_cast<Eigen::Index>(rows.size()),
                   rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < rows[i].size(); ++c) {
      fm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          rows[i][c];
    }
  }
  return {j.at("id").get<std::string>(), std::move(fm)};
}

}  // namespace poger
