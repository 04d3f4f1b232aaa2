#pragma once

#include <memory>
#include <string>

#include "voxql/http/api.hpp"

namespace voxql::http {

class HttpServer {
 public:
  explicit HttpServer(Api& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds host:port (port 0 picks a free one) and returns the bound port.
  // Throws IoError when binding fails.
  int bind(const std::string& host, int port);
  // Serves until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace voxql::http
