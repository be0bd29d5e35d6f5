#include "tutorsynth/http_service.h"

#include "httplib.h"

namespace tutorsynth {

struct HttpServer::Impl {
  httplib::Server server;
};

namespace {

void Send(httplib::Response& res, const ServiceResponse& r) {
  res.status = r.status;
  res.set_header("Access-Control-Allow-Origin", "*");
  if (!r.raw.empty()) {
    res.set_content(r.raw, r.content_type);
  } else {
    res.set_content(r.body.dump(), "application/json");
  }
}

}  // namespace

HttpServer::HttpServer(TutorialService& service) : impl_(std::make_unique<Impl>()) {
  auto& s = impl_->server;
  s.Get("/tutorials", [&service](const httplib::Request&, httplib::Response& res) {
    Send(res, service.ListTutorials());
  });
  s.Get(R"(/tutorials/([^/]+))",
        [&service](const httplib::Request& req, httplib::Response& res) {
          Send(res, service.GetTutorial(req.matches[1]));
        });
  s.Get(R"(/assets/(.+))", [&service](const httplib::Request& req, httplib::Response& res) {
    Send(res, service.GetAsset(req.matches[1]));
  });
  s.Post("/sessions", [&service](const httplib::Request& req, httplib::Response& res) {
    Send(res, service.CreateSession(req.body));
  });
  s.Post(R"(/sessions/([^/]+)/act)",
         [&service](const httplib::Request& req, httplib::Response& res) {
           Send(res, service.Act(req.matches[1], req.body));
         });
  s.Get(R"(/sessions/([^/]+))",
        [&service](const httplib::Request& req, httplib::Response& res) {
          Send(res, service.GetSession(req.matches[1]));
        });
  s.Post("/snapshots", [&service](const httplib::Request& req, httplib::Response& res) {
    Send(res, service.PostSnapshot(req.body));
  });
  s.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.status = 204;
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::Listen() { return impl_->server.listen_after_bind(); }

void HttpServer::Stop() { impl_->server.stop(); }

}  // namespace tutorsynth
