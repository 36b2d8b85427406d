#include "poger/cache.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

namespace poger {

namespace {

std::string canonical_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ResampleCache::ResampleCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;  // fresh cache
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) continue;  // torn tail line from a killed run
    auto ctx = j.at("ctx").get<std::vector<std::string>>();
    auto key = make_key(j.at("backend").get<std::string>(), ctx,
                        j.at("target").get<std::string>(),
                        j.at("t").get<double>(), j.at("n").get<int>());
    entries_[key] = j.at("match_count").get<int>();
  }
}

ResampleCache::~ResampleCache() = default;

std::string ResampleCache::make_key(std::string_view backend,
                                    std::span<const std::string> context,
                                    std::string_view target,
                                    double temperature, int n_samples) {
  std::string key;
  key.reserve(64);
  key.append(backend);
  key += '\x1e';
  for (const auto& w : context) {
    key += w;
    key += '\x1f';
  }
  key += '\x1e';
  key.append(target);
  key += '\x1e';
  key += canonical_double(temperature);
  key += '\x1e';
  key += std::to_string(n_samples);
  return key;
}

std::optional<int> ResampleCache::lookup(const std::string& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResampleCache::store(std::string_view backend,
                          std::span<const std::string> context,
                          std::string_view target, double temperature,
                          int n_samples, int match_count) {
  auto key = make_key(backend, context, target, temperature, n_samples);
  std::lock_guard lock(mutex_);
  auto [it, inserted] = entries_.emplace(std::move(key), match_count);
  if (!inserted) return;
  if (path_.empty()) return;
  nlohmann::json j{{"backend", std::string(backend)},
                   {"ctx", std::vector<std::string>(context.begin(), context.end())},
                   {"target", std::string(target)},
                   {"t", temperature},
                   {"n", n_samples},
                   {"match_count", match_count}};
  append_line(j.dump());
}

void ResampleCache::append_line(const std::string& line) {
  std::ofstream out(path_, std::ios::app);
  out << line << '\n';
  out.flush();
}

std::size_t ResampleCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

}  // namespace poger
