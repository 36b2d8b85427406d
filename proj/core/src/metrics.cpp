#include "poger/metrics.hpp"

namespace poger {

ConfusionTable::ConfusionTable(int n_classes) : n_classes_(n_classes) {
  if (n_classes < 1) throw std::invalid_argument("need at least one class");
  counts_.assign(static_cast<std::size_t>(n_classes) * n_classes, 0);
}

void ConfusionTable::add(int truth, int predicted) {
  if (truth < 0 || truth >= n_classes_ || predicted < 0 ||
      predicted >= n_classes_) {
    throw IndexError("class index out of range");
  }
  ++counts_[static_cast<std::size_t>(truth) * n_classes_ + predicted];
}

long long ConfusionTable::count(int truth, int predicted) const {
  return counts_[static_cast<std::size_t>(truth) * n_classes_ + predicted];
}

long long ConfusionTable::total() const {
  long long sum = 0;
  for (long long c : counts_) sum += c;
  return sum;
}

long long ConfusionTable::row_total(int truth) const {
  long long sum = 0;
  for (int j = 0; j < n_classes_; ++j) sum += count(truth, j);
  return sum;
}

long long ConfusionTable::col_total(int predicted) const {
  long long sum = 0;
  for (int i = 0; i < n_classes_; ++i) sum += count(i, predicted);
  return sum;
}

F1Report f1_scores(const ConfusionTable& table, MacroAveraging averaging) {
  const int n = table.n_classes();
  F1Report report;
  report.per_class.resize(static_cast<std::size_t>(n), 0.0);
  report.included.resize(static_cast<std::size_t>(n), false);

  double macro_sum = 0.0;
  int macro_count = 0;
  for (int c = 0; c < n; ++c) {
    long long tp = table.count(c, c);
    long long fp = table.col_total(c) - tp;
    long long fn = table.row_total(c) - tp;
    double f1 = 0.0;
    if (2 * tp + fp + fn > 0) {
      f1 = 100.0 * 2.0 * static_cast<double>(tp) /
           static_cast<double>(2 * tp + fp + fn);
    }
    report.per_class[static_cast<std::size_t>(c)] = f1;

    bool present = table.row_total(c) > 0 || table.col_total(c) > 0;
    bool include = averaging == MacroAveraging::AllClasses || present;
    report.included[static_cast<std::size_t>(c)] = include;
    if (include) {
      macro_sum += f1;
      ++macro_count;
    }
  }
  report.macro_f1 = macro_count > 0 ? macro_sum / macro_count : 0.0;
  return report;
}

}  // namespace poger
