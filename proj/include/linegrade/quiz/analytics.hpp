#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace linegrade::quiz {

/// Answers that are equal once whitespace is normalized.
struct WhitespaceGroup {
  std::string key;
  std::vector<std::string> members;
};

/// Deletes every whitespace character, or with `collapse` replaces each run
/// by one space and trims the ends.
std::string whitespace_key(std::string_view text, bool collapse = false);

/// Groups in order of first appearance.
std::vector<WhitespaceGroup> dedupe_whitespace(const std::vector<std::string>& answers,
                                               bool collapse = false);

struct LabeledVerdict {
  std::string text;
  bool human_correct = false;
  bool engine_correct = false;
};

/// "Correct" is the positive class. Ratios with a zero denominator are
/// left empty.
struct ConfusionMetrics {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t true_negative = 0;
  std::size_t false_negative = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

ConfusionMetrics confusion_metrics(const std::vector<LabeledVerdict>& log);

/// F1 from precision and recall; empty when both are zero.
std::optional<double> f1_score(double precision, double recall);

struct Summary {
  std::size_t count = 0;
  double min = 0, max = 0, mean = 0, stdev = 0;  // population stdev
};

Summary summarize(const std::vector<double>& values);

}  // namespace linegrade::quiz
