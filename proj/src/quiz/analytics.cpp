#include "linegrade/quiz/analytics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>

namespace linegrade::quiz {

std::string whitespace_key(std::string_view text, bool collapse) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = collapse && !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::vector<WhitespaceGroup> dedupe_whitespace(const std::vector<std::string>& answers,
                                               bool collapse) {
  std::vector<WhitespaceGroup> groups;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& a : answers) {
    std::string key = whitespace_key(a, collapse);
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) groups.push_back({std::move(key), {}});
    groups[it->second].members.push_back(a);
  }
  return groups;
}

std::optional<double> f1_score(double precision, double recall) {
  if (precision + recall == 0.0) return std::nullopt;
  return 2.0 * precision * recall / (precision + recall);
}

ConfusionMetrics confusion_metrics(const std::vector<LabeledVerdict>& log) {
  ConfusionMetrics m;
  for (const auto& e : log) {
    if (e.engine_correct)
      ++(e.human_correct ? m.true_positive : m.false_positive);
    else
      ++(e.human_correct ? m.false_negative : m.true_negative);
  }
  const auto ratio = [](std::size_t num, std::size_t den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  m.precision = ratio(m.true_positive, m.true_positive + m.false_positive);
  m.recall = ratio(m.true_positive, m.true_positive + m.false_negative);
  if (m.precision && m.recall) m.f1 = f1_score(*m.precision, *m.recall);
  return m;
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stdev = std::sqrt(sq / static_cast<double>(values.size()));
  return s;
}

}  // namespace linegrade::quiz
