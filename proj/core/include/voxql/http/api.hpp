#pragma once

#include <map>
#include <string>

#include "voxql/store/store.hpp"

namespace voxql::http {

struct ApiRequest {
  std::string method;
  std::string target;  // raw request target, still percent-encoded, may carry a query
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

struct ApiOptions {
  // Adds permissive CORS headers and answers OPTIONS preflights.
  bool cors = false;
};

// The REST surface over a Store. Transport independent so it can be tested
// without sockets. Errors are {"error": message} with 400, 404 or 500.
class Api {
 public:
  explicit Api(store::Store& store, ApiOptions options = {});
  ApiResponse handle(const ApiRequest& request);

 private:
  store::Store& store_;
  ApiOptions options_;
};

}  // namespace voxql::http
