#pragma once

// Word-level view of texts and the labeled dataset records shared by the
// whole pipeline. A "word" is a maximal run of non-whitespace characters;
// punctuation stays attached to its word.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "poger/errors.hpp"

namespace poger {

struct WordSpan {
  std::size_t begin = 0;  // inclusive character index into the original text
  std::size_t end = 0;    // exclusive

  friend bool operator==(const WordSpan&, const WordSpan&) = default;
};

struct WordSequence {
  std::string original;
  std::vector<std::string> words;
  std::vector<WordSpan> offsets;

  std::size_t size() const { return words.size(); }
  bool empty() const { return words.empty(); }
};

// Splits on whitespace; throws EmptyTextError when no words are found.
WordSequence tokenize_words(std::string_view text);

// Label of a record: model 0 is human, 1..M are candidate generators.
struct SourceLabel {
  int model = 0;

  bool is_human() const { return model == 0; }
  static SourceLabel human() { return SourceLabel{0}; }
  static SourceLabel model_index(int m);

  friend bool operator==(const SourceLabel&, const SourceLabel&) = default;
};

enum class BinaryLabel { Human, AI };

BinaryLabel collapse_binary(SourceLabel label);

// Wire encoding used in dataset files: "human" or "model:<index>".
std::string label_to_string(SourceLabel label);
SourceLabel label_from_string(std::string_view s);

enum class Split { Train, Val, Test };

std::string split_to_string(Split s);
Split split_from_string(std::string_view s);

struct DatasetRecord {
  std::string id;
  WordSequence text;
  SourceLabel label;
  std::string domain_tag;
  Split split = Split::Train;
};

// JSON-lines corpus files: one object per record with fields
// {id, text, label, domain, split}.
std::vector<DatasetRecord> load_corpus_jsonl(const std::string& path);
void save_corpus_jsonl(const std::vector<DatasetRecord>& records,
                       const std::string& path);

}  // namespace poger
