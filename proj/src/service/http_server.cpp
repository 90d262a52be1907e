#include "httplib.h"
#include "linegrade/service/api.hpp"

namespace linegrade::service {

struct HttpServer::Impl {
  httplib::Server server;
};

namespace {

void reply(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

}  // namespace

HttpServer::HttpServer(std::shared_ptr<Api> api, ServerConfig config)
    : impl_(std::make_unique<Impl>()), api_(std::move(api)), config_(std::move(config)) {
  auto& s = impl_->server;
  auto api_ptr = api_;
  s.Post("/api/regex/test", [api_ptr](const httplib::Request& req, httplib::Response& res) {
    reply(res, api_ptr->test_regex(req.body));
  });
  s.Post("/api/attempts", [api_ptr](const httplib::Request& req, httplib::Response& res) {
    reply(res, api_ptr->create_attempt(req.body));
  });
  s.Post(R"(/api/attempts/([^/]+)/answer)",
         [api_ptr](const httplib::Request& req, httplib::Response& res) {
           reply(res, api_ptr->submit_answer(req.matches[1], req.body));
         });
  s.Post(R"(/api/attempts/([^/]+)/hint)",
         [api_ptr](const httplib::Request& req, httplib::Response& res) {
           reply(res, api_ptr->hint(req.matches[1], req.body));
         });
  s.Post(R"(/api/attempts/([^/]+)/give-up)",
         [api_ptr](const httplib::Request& req, httplib::Response& res) {
           reply(res, api_ptr->give_up(req.matches[1]));
         });
  s.Get(R"(/api/attempts/([^/]+))", [api_ptr](const httplib::Request& req, httplib::Response& res) {
    reply(res, api_ptr->get_attempt(req.matches[1]));
  });
  s.Get("/api/questions", [api_ptr](const httplib::Request&, httplib::Response& res) {
    reply(res, api_ptr->list_questions());
  });
  s.Get(R"(/api/questions/([^/]+))", [api_ptr](const httplib::Request& req, httplib::Response& res) {
    reply(res, api_ptr->get_question(req.matches[1]));
  });
  if (!config_.static_dir.empty()) s.set_mount_point("/", config_.static_dir);
  s.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (res.body.empty() && req.path.rfind("/api/", 0) == 0)
      res.set_content(error_body("NotFound", "no route for " + req.method + " " + req.path).dump(),
                      "application/json");
  });
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::bind() {
  auto& s = impl_->server;
  if (config_.port == 0) {
    port_ = s.bind_to_any_port(config_.host);
    return port_ > 0;
  }
  if (!s.bind_to_port(config_.host, config_.port)) return false;
  port_ = config_.port;
  return true;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace linegrade::service
