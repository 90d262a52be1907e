#include "linegrade/service/store.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace linegrade::service {

using nlohmann::json;

namespace {

std::int64_t wall_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

std::uint64_t id_number(const std::string& id) {
  if (id.size() < 2 || id[0] != 'a') return 0;
  try {
    return std::stoull(id.substr(1));
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

SessionStore::SessionStore(std::shared_ptr<const quiz::QuestionBank> bank, std::string log_path,
                           Clock clock)
    : bank_(std::move(bank)), log_path_(std::move(log_path)), clock_(std::move(clock)) {
  if (!clock_) clock_ = wall_clock_ms;
  if (log_path_.empty()) return;
  replay();
  log_ = std::fopen(log_path_.c_str(), "ab");
  if (!log_) throw StoreError("cannot open event log " + log_path_);
}

SessionStore::~SessionStore() {
  if (log_) std::fclose(log_);
}

void SessionStore::append(const std::string& line) {
  if (!log_) return;
  std::lock_guard lock(log_mutex_);
  const std::string out = line + "\n";
  if (std::fwrite(out.data(), 1, out.size(), log_) != out.size() || std::fflush(log_) != 0)
    throw StoreError("cannot append to event log " + log_path_);
}

const quiz::Question& SessionStore::question_of(const quiz::Attempt& a) const {
  const auto* q = bank_->find(a.question_id);
  if (!q) throw UnknownQuestion(a.question_id);
  return *q;
}

std::shared_ptr<SessionStore::Slot> SessionStore::slot(const std::string& attempt_id) const {
  std::lock_guard lock(map_mutex_);
  auto it = attempts_.find(attempt_id);
  if (it == attempts_.end()) throw UnknownAttempt(attempt_id);
  return it->second;
}

quiz::Attempt SessionStore::create(const std::string& question_id, std::optional<quiz::Mode> mode) {
  const auto* q = bank_->find(question_id);
  if (!q) throw UnknownQuestion(question_id);
  std::lock_guard lock(map_mutex_);
  const std::string id = "a" + std::to_string(next_id_);
  auto s = std::make_shared<Slot>();
  s->attempt = quiz::start_attempt(id, *q, mode);
  append(json{{"event", "create"},
              {"attempt_id", id},
              {"question_id", question_id},
              {"mode", quiz::to_string(s->attempt.mode)},
              {"ts", clock_()}}
             .dump());
  ++next_id_;
  attempts_.emplace(id, s);
  return s->attempt;
}

std::pair<quiz::Attempt, quiz::GradeResult> SessionStore::answer(const std::string& attempt_id,
                                                                 const std::string& text) {
  auto s = slot(attempt_id);
  std::lock_guard lock(s->mutex);
  const std::int64_t ts = clock_();
  auto next = quiz::submit(s->attempt, question_of(s->attempt), text, ts, bank_->pass_threshold);
  append(json{{"event", "answer"}, {"attempt_id", attempt_id}, {"text", text}, {"ts", ts}}.dump());
  s->attempt = std::move(next);
  return {s->attempt, s->attempt.submissions.back().grade};
}

std::pair<quiz::Attempt, hint::Hint> SessionStore::hint(const std::string& attempt_id,
                                                        hint::HintKind kind) {
  auto s = slot(attempt_id);
  std::lock_guard lock(s->mutex);
  auto [h, next] = quiz::request_hint(s->attempt, question_of(s->attempt), kind);
  append(json{{"event", "hint"},
              {"attempt_id", attempt_id},
              {"kind", hint::to_string(kind)},
              {"ts", clock_()}}
             .dump());
  s->attempt = std::move(next);
  return {s->attempt, std::move(h)};
}

quiz::Attempt SessionStore::give_up(const std::string& attempt_id) {
  auto s = slot(attempt_id);
  std::lock_guard lock(s->mutex);
  auto next = quiz::give_up(s->attempt);
  append(json{{"event", "give_up"}, {"attempt_id", attempt_id}, {"ts", clock_()}}.dump());
  s->attempt = std::move(next);
  return s->attempt;
}

quiz::Attempt SessionStore::get(const std::string& attempt_id) const {
  auto s = slot(attempt_id);
  std::lock_guard lock(s->mutex);
  return s->attempt;
}

std::map<std::string, quiz::Attempt> SessionStore::snapshot() const {
  std::map<std::string, std::shared_ptr<Slot>> slots;
  {
    std::lock_guard lock(map_mutex_);
    slots = attempts_;
  }
  std::map<std::string, quiz::Attempt> out;
  for (const auto& [id, s] : slots) {
    std::lock_guard lock(s->mutex);
    out.emplace(id, s->attempt);
  }
  return out;
}

void SessionStore::replay() {
  std::ifstream in(log_path_, std::ios::binary);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = log_path_ + ":" + std::to_string(line_no) + ": ";
    try {
      const json e = json::parse(line);
      const std::string event = e.at("event").get<std::string>();
      const std::string id = e.at("attempt_id").get<std::string>();
      if (event == "create") {
        const auto* q = bank_->find(e.at("question_id").get<std::string>());
        if (!q) throw StoreError("question no longer in bank");
        auto s = std::make_shared<Slot>();
        s->attempt = quiz::start_attempt(id, *q, quiz::mode_from_string(e.at("mode").get<std::string>()));
        attempts_[id] = s;
        next_id_ = std::max(next_id_, id_number(id) + 1);
        continue;
      }
      auto it = attempts_.find(id);
      if (it == attempts_.end()) throw StoreError("event for unknown attempt " + id);
      quiz::Attempt& a = it->second->attempt;
      if (event == "answer") {
        a = quiz::submit(a, question_of(a), e.at("text").get<std::string>(),
                         e.at("ts").get<std::int64_t>(), bank_->pass_threshold);
      } else if (event == "hint") {
        auto kind = hint::hint_kind_from_string(e.at("kind").get<std::string>());
        if (!kind) throw StoreError("bad hint kind");
        a = quiz::request_hint(a, question_of(a), *kind).second;
      } else if (event == "give_up") {
        a = quiz::give_up(a);
      } else {
        throw StoreError("unknown event '" + event + "'");
      }
    } catch (const json::exception& ex) {
      throw StoreError(where + ex.what());
    } catch (const Error& ex) {
      throw StoreError(where + ex.what());
    }
  }
}

}  // namespace linegrade::service
