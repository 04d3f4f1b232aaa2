#include "voxql/http/server.hpp"

#include <httplib.h>

#include "voxql/error.hpp"

namespace voxql::http {

struct HttpServer::Impl {
  Api& api;
  httplib::Server server;

  explicit Impl(Api& a) : api(a) {
    // httplib decodes req.path, which would turn an encoded caseId into two
    // segments; the API routes on the raw target instead.
    const auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      ApiResponse out = api.handle({req.method, req.target, req.body});
      res.status = out.status;
      for (const auto& [key, value] : out.headers) res.set_header(key, value);
      res.set_content(std::move(out.body), out.content_type);
    };
    const char* pattern = R"(/.*)";
    server.Get(pattern, handler);
    server.Post(pattern, handler);
    server.Put(pattern, handler);
    server.Delete(pattern, handler);
    server.Options(pattern, handler);
  }
};

HttpServer::HttpServer(Api& api) : impl_(std::make_unique<Impl>(api)) {}
HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace voxql::http
