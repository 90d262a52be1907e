#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "linegrade/quiz/attempt.hpp"
#include "linegrade/quiz/bank.hpp"

namespace linegrade::service {

class UnknownQuestion : public Error {
 public:
  explicit UnknownQuestion(const std::string& id) : Error("unknown question '" + id + "'") {}
  const char* kind() const noexcept override { return "UnknownQuestion"; }
};

class UnknownAttempt : public Error {
 public:
  explicit UnknownAttempt(const std::string& id) : Error("unknown attempt '" + id + "'") {}
  const char* kind() const noexcept override { return "UnknownAttempt"; }
};

class StoreError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "StoreError"; }
};

/// Attempts of one question bank, persisted as an append-only file of
/// newline-delimited JSON events. Opening an existing file replays it.
/// Operations on different attempts run concurrently; operations on the
/// same attempt are serialized.
class SessionStore {
 public:
  using Clock = std::function<std::int64_t()>;

  /// An empty `log_path` keeps everything in memory.
  SessionStore(std::shared_ptr<const quiz::QuestionBank> bank, std::string log_path = {},
               Clock clock = {});
  ~SessionStore();
  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  const quiz::QuestionBank& bank() const { return *bank_; }

  quiz::Attempt create(const std::string& question_id, std::optional<quiz::Mode> mode = {});
  std::pair<quiz::Attempt, quiz::GradeResult> answer(const std::string& attempt_id,
                                                     const std::string& text);
  std::pair<quiz::Attempt, hint::Hint> hint(const std::string& attempt_id, hint::HintKind kind);
  quiz::Attempt give_up(const std::string& attempt_id);
  quiz::Attempt get(const std::string& attempt_id) const;
  std::map<std::string, quiz::Attempt> snapshot() const;

 private:
  struct Slot {
    std::mutex mutex;
    quiz::Attempt attempt;
  };

  std::shared_ptr<Slot> slot(const std::string& attempt_id) const;
  const quiz::Question& question_of(const quiz::Attempt& a) const;
  void replay();
  void append(const std::string& line);

  std::shared_ptr<const quiz::QuestionBank> bank_;
  std::string log_path_;
  Clock clock_;
  mutable std::mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> attempts_;
  std::uint64_t next_id_ = 1;
  std::mutex log_mutex_;
  std::FILE* log_ = nullptr;
};

}  // namespace linegrade::service
