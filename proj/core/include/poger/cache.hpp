#pragma once

// Append-only re-sampling cache keyed by (backend, context words, target
// word, temperature, N). Persisted as JSONL so interrupted runs resume
// without repeating backend calls.

#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

namespace poger {

class ResampleCache {
 public:
  ResampleCache() = default;  // in-memory only
  explicit ResampleCache(std::string path);  // loads existing entries
  ~ResampleCache();

  ResampleCache(const ResampleCache&) = delete;
  ResampleCache& operator=(const ResampleCache&) = delete;

  static std::string make_key(std::string_view backend,
                              std::span<const std::string> context,
                              std::string_view target, double temperature,
                              int n_samples);

  std::optional<int> lookup(const std::string& key) const;

  // Inserts and appends one JSONL line (no-op if the key is present).
  void store(std::string_view backend, std::span<const std::string> context,
             std::string_view target, double temperature, int n_samples,
             int match_count);

  std::size_t size() const;
  const std::string& path() const { return path_; }

 private:
  void append_line(const std::string& line);

  mutable std::mutex mutex_;
  std::unordered_map<std::string, int> entries_;
  std::string path_;  // empty -> no persistence
};

}  // namespace poger
