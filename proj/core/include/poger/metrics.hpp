#pragma once

// Per-class and macro F1 over a multiclass confusion table. F1 values are
// on the 0-100 scale.

#include <vector>

#include "poger/errors.hpp"

namespace poger {

class ConfusionTable {
 public:
  explicit ConfusionTable(int n_classes);

  void add(int truth, int predicted);
  long long count(int truth, int predicted) const;
  long long total() const;
  int n_classes() const { return n_classes_; }

  long long row_total(int truth) const;
  long long col_total(int predicted) const;

 private:
  int n_classes_;
  std::vector<long long> counts_;  // row-major, rows = true class
};

enum class MacroAveraging {
  PresentOnly,  // classes with no true and no predicted samples are skipped
  AllClasses,
};

struct F1Report {
  std::vector<double> per_class;   // 0-100; 0 when undefined
  std::vector<bool> included;      // per class, participates in the macro
  double macro_f1 = 0.0;
};

F1Report f1_scores(const ConfusionTable& table,
                   MacroAveraging averaging = MacroAveraging::PresentOnly);

}  // namespace poger
