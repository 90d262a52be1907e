#pragma once

#include <memory>
#include <optional>
#include <string>

#include "linegrade/service/json_io.hpp"
#include "linegrade/service/store.hpp"

namespace linegrade::service {

struct ApiResponse {
  int status = 200;
  json body;
};

/// Transport-independent request handlers behind the HTTP routes.
class Api {
 public:
  explicit Api(std::shared_ptr<SessionStore> store) : store_(std::move(store)) {}

  ApiResponse test_regex(const std::string& body) const;
  ApiResponse create_attempt(const std::string& body);
  ApiResponse submit_answer(const std::string& attempt_id, const std::string& body);
  ApiResponse hint(const std::string& attempt_id, const std::string& body);
  ApiResponse give_up(const std::string& attempt_id);
  ApiResponse get_attempt(const std::string& attempt_id) const;
  ApiResponse list_questions() const;
  ApiResponse get_question(const std::string& question_id) const;

  SessionStore& store() { return *store_; }

 private:
  std::shared_ptr<SessionStore> store_;
};

/// Pattern-debugging response for one candidate answer; shared with the CLI.
json test_candidate(const engine::CompiledPattern& cp, const std::string& answer);

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8750;
  /// Directory served at `/`; empty disables static files.
  std::string static_dir;
};

/// `--port` wins, then PREG_PORT, then 8750.
int resolve_port(std::optional<int> flag);

class HttpServer {
 public:
  HttpServer(std::shared_ptr<Api> api, ServerConfig config);
  ~HttpServer();

  /// Binds the socket; false when the port is unavailable. Port 0 picks a
  /// free port, reported by port().
  bool bind();
  int port() const { return port_; }
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::shared_ptr<Api> api_;
  ServerConfig config_;
  int port_ = 0;
};

}  // namespace linegrade::service
