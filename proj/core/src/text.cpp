#include "poger/text.hpp"

#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>

namespace poger {

namespace {

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

WordSequence tokenize_words(std::string_view text) {
  WordSequence seq;
  seq.original.assign(text);
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    if (i >= n) break;
    std::size_t begin = i;
    while (i < n && !is_space(text[i])) ++i;
    seq.words.emplace_back(text.substr(begin, i - begin));
    seq.offsets.push_back(WordSpan{begin, i});
  }
  if (seq.words.empty()) {
    throw EmptyTextError("no words found in text");
  }
  return seq;
}

SourceLabel SourceLabel::model_index(int m) {
  if (m < 1) {
    throw std::invalid_argument("model index must be >= 1");
  }
  return SourceLabel{m};
}

BinaryLabel collapse_binary(SourceLabel label) {
  return label.is_human() ? BinaryLabel::Human : BinaryLabel::AI;
}

std::string label_to_string(SourceLabel label) {
  if (label.is_human()) return "human";
  return "model:" + std::to_string(label.model);
}

SourceLabel label_from_string(std::string_view s) {
  if (s == "human") return SourceLabel::human();
  constexpr std::string_view prefix = "model:";
  if (s.substr(0, prefix.size()) == prefix) {
    int m = std::stoi(std::string(s.substr(prefix.size())));
    return SourceLabel::model_index(m);
  }
  throw std::invalid_argument("unrecognized label: " + std::string(s));
}

std::string split_to_string(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "train";
}

Split split_from_string(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "val") return Split::Val;
  if (s == "test") return Split::Test;
  throw std::invalid_argument("unrecognized split: " + std::string(s));
}

std::vector<DatasetRecord> load_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open corpus file: " + path);
  }
  std::vector<DatasetRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    DatasetRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.text = tokenize_words(j.at("text").get<std::string>());
    rec.label = label_from_string(j.at("label").get<std::string>());
    rec.domain_tag = j.at("domain").get<std::string>();
    rec.split = split_from_string(j.at("split").get<std::string>());
    records.push_back(std::move(rec));
  }
  return records;
}

void save_corpus_jsonl(const std::vector<DatasetRecord>& records,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write corpus file: " + path);
  }
  for (const auto& rec : records) {
    nlohmann::json j{{"id", rec.id},
                     {"text", rec.text.original},
                     {"label", label_to_string(rec.label)},
                     {"domain", rec.domain_tag},
                     {"split", split_to_string(rec.split)}};
    out << j.dump() << '\n';
  }
}

}  // namespace poger
