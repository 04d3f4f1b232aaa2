#include "voxql/http/api.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "voxql/error.hpp"
#include "voxql/path_rules.hpp"

namespace voxql::http {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Raised inside handlers to produce a specific status.
struct HttpError {
  int status;
  std::string message;
};

ApiResponse json_response(int status, const json& body) { return {status, "application/json", body.dump(), {}}; }

ApiResponse error_response(int status, const std::string& message) {
  return json_response(status, json{{"error", message}});
}

template <class T>
json json_list(const std::vector<T>& items) {
  json out = json::array();
  for (const auto& item : items) out.push_back(store::to_json(item));
  return out;
}

std::string read_bytes(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read " + file.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

ApiResponse file_response(const fs::path& file) {
  const std::string name = file.filename().string();
  const bool gz = name.size() > 3 && name.compare(name.size() - 3, 3, ".gz") == 0;
  return {200, gz ? "application/gzip" : "application/octet-stream", read_bytes(file), {}};
}

// Splits "/a/b%2Fc?q" into decoded segments {"a", "b/c"}. A single trailing
// slash is tolerated. Any segment that could address something outside its
// parent is rejected, except where a route explicitly allows a relative path.
std::vector<std::string> decode_segments(const std::string& target) {
  std::string path = target.substr(0, target.find('?'));
  if (path.empty() || path.front() != '/') throw HttpError{400, "request target must start with '/'"};
  path.erase(0, 1);
  if (!path.empty() && path.back() == '/') path.pop_back();
  std::vector<std::string> segments;
  if (path.empty()) return segments;
  std::size_t start = 0;
  while (true) {
    const std::size_t slash = path.find('/', start);
    const std::string raw = path.substr(start, slash == std::string::npos ? std::string::npos : slash - start);
    auto decoded = percent_decode(raw);
    if (!decoded) throw HttpError{400, "malformed percent-encoding in path"};
    if (decoded->empty()) throw HttpError{400, "empty path segment"};
    segments.push_back(std::move(*decoded));
    if (slash == std::string::npos) break;
    start = slash + 1;
  }
  return segments;
}

void require_segment(const std::string& segment) {
  if (!is_safe_segment(segment)) throw HttpError{400, "invalid path segment"};
}

// caseId carries "dataset/case" with the slash percent-encoded.
void require_case_path(const std::string& case_path) {
  if (!is_safe_relative_path(case_path) || std::count(case_path.begin(), case_path.end(), '/') != 1)
    throw HttpError{400, "invalid case id"};
}

json parse_body(const std::string& body) {
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw HttpError{400, "request body must be a JSON object"};
    return j;
  } catch (const json::parse_error&) {
    throw HttpError{400, "request body is not valid JSON"};
  }
}

std::string string_field(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) throw HttpError{400, std::string("missing field '") + key + "'"};
  if (!it->is_string()) throw HttpError{400, std::string("field '") + key + "' must be a string"};
  return it->get<std::string>();
}

std::optional<std::string> optional_string_field(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw HttpError{400, std::string("field '") + key + "' must be a string"};
  return it->get<std::string>();
}

std::optional<store::WorkspaceState> optional_state(const json& body) {
  auto it = body.find("state");
  if (it == body.end() || it->is_null()) return std::nullopt;
  return store::WorkspaceState::from_json(*it);
}

[[noreturn]] void method_not_allowed() { throw HttpError{405, "method not allowed"}; }

class Router {
 public:
  Router(store::Store& store, const ApiRequest& request, std::vector<std::string> segments)
      : store_(store), request_(request), seg_(std::move(segments)) {}

  ApiResponse route() {
    if (seg_.empty()) throw HttpError{404, "no such route"};
    const std::string& root = seg_[0];
    if (root == "datasets") return datasets();
    if (root == "scripts") return scripts();
    if (root == "run" && seg_.size() == 1) return run();
    if (root == "workspaces") return workspaces();
    throw HttpError{404, "no such route"};
  }

 private:
  bool is(const char* method) const { return request_.method == method; }

  void require_get() const {
    if (!is("GET")) method_not_allowed();
  }

  ApiResponse datasets() {
    for (std::size_t i = 1; i < seg_.size(); ++i) require_segment(seg_[i]);
    require_get();
    const std::size_t n = seg_.size();
    if (n == 1) return json_response(200, json_list(store_.list_datasets()));
    const std::string& dataset = seg_[1];
    if (n == 2) return json_response(200, store::to_json(store_.get_dataset(dataset)));
    if (seg_[2] != "cases") throw HttpError{404, "no such route"};
    if (n == 3) return json_response(200, json_list(store_.list_cases(dataset)));
    const std::string& case_name = seg_[3];
    if (n == 4) {
      store_.list_layers(dataset, case_name);
      return json_response(200, store::to_json(store::CaseRef{case_name, dataset + "/" + case_name}));
    }
    if (seg_[4] != "layers") throw HttpError{404, "no such route"};
    if (n == 5) return json_response(200, json_list(store_.list_layers(dataset, case_name)));
    if (n == 6) return file_response(store_.layer_file(dataset, case_name, seg_[5]));
    throw HttpError{404, "no such route"};
  }

  ApiResponse scripts() {
    for (std::size_t i = 1; i < seg_.size(); ++i) require_segment(seg_[i]);
    require_get();
    if (seg_.size() == 1) return json_response(200, json_list(store_.list_scripts()));
    if (seg_.size() == 2) return {200, "text/plain; charset=utf-8", store_.script_text(seg_[1]), {}};
    throw HttpError{404, "no such route"};
  }

  ApiResponse run() {
    if (!is("POST")) method_not_allowed();
    const json body = parse_body(request_.body);
    const std::string workspace_id = string_field(body, "workspaceId");
    const std::string script = string_field(body, "scriptContent");
    auto cases = body.find("cases");
    if (cases == body.end()) throw HttpError{400, "missing field 'cases'"};
    if (!cases->is_array()) throw HttpError{400, "field 'cases' must be an array"};
    std::vector<std::string> case_paths;
    for (const auto& c : *cases) {
      if (!c.is_string()) throw HttpError{400, "field 'cases' must contain strings"};
      require_case_path(c.get<std::string>());
      case_paths.push_back(c.get<std::string>());
    }
    store_.workspace_dir(workspace_id);
    for (const auto& c : case_paths) store_.case_input(c);

    json results = json::array();
    for (const auto& c : case_paths) results.push_back(store_.execute_run(workspace_id, c, script).to_json());
    return json_response(200, results);
  }

  ApiResponse workspaces() {
    const std::size_t n = seg_.size();
    if (n == 1) {
      if (is("GET")) {
        json out = json::array();
        for (const auto& info : store_.list_workspaces()) out.push_back({{"id", info.id}, {"name", info.name}});
        return json_response(200, out);
      }
      if (is("POST")) {
        const json body = parse_body(request_.body);
        const std::string name = string_field(body, "name");
        const auto source = optional_string_field(body, "sourceId");
        const auto state = optional_state(body);
        if (source && !is_safe_segment(*source)) throw HttpError{404, "unknown workspace " + *source};
        return json_response(201, store_.create_workspace(name, source, state).to_json());
      }
      method_not_allowed();
    }
    const std::string& id = seg_[1];
    require_segment(id);
    if (n == 2) {
      if (is("GET")) return json_response(200, store_.get_workspace(id).to_json());
      if (is("PUT")) {
        const json body = parse_body(request_.body);
        const auto name = optional_string_field(body, "name");
        const auto state = optional_state(body);
        if (!name && !state) throw HttpError{400, "expected 'name' and/or 'state'"};
        store_.update_workspace(id, name, state);
        return json_response(200, json{{"ok", true}});
      }
      if (is("DELETE")) {
        store_.delete_workspace(id);
        return json_response(200, json{{"ok", true}});
      }
      method_not_allowed();
    }
    if (n == 3 && seg_[2] == "runs") {
      require_get();
      json out = json::array();
      for (const auto& record : store_.list_runs(id)) out.push_back(record.to_json());
      return json_response(200, out);
    }
    if (n == 6 && seg_[4] == "layers") {
      require_case_path(seg_[2]);
      require_segment(seg_[3]);
      require_segment(seg_[5]);
      require_get();
      return file_response(store_.run_output_file(id, seg_[2], seg_[3], seg_[5]));
    }
    if (!is_safe_relative_path(seg_[2])) throw HttpError{400, "invalid path segment"};
    for (std::size_t i = 3; i < n; ++i) require_segment(seg_[i]);
    throw HttpError{404, "no such route"};
  }

  store::Store& store_;
  const ApiRequest& request_;
  std::vector<std::string> seg_;
};

}  // namespace

Api::Api(store::Store& store, ApiOptions options) : store_(store), options_(options) {}

ApiResponse Api::handle(const ApiRequest& request) {
  ApiResponse response;
  if (options_.cors && request.method == "OPTIONS") {
    response = {204, "text/plain", "", {}};
  } else {
    try {
      response = Router(store_, request, decode_segments(request.target)).route();
    } catch (const HttpError& e) {
      response = error_response(e.status, e.message);
    } catch (const NotFound& e) {
      response = error_response(404, e.what());
    } catch (const InvalidInput& e) {
      response = error_response(400, e.what());
    } catch (const std::exception& e) {
      response = error_response(500, e.what());
    }
  }
  if (options_.cors) {
    response.headers["Access-Control-Allow-Origin"] = "*";
    response.headers["Access-Control-Allow-Methods"] = "GET, POST, PUT, DELETE, OPTIONS";
    response.headers["Access-Control-Allow-Headers"] = "Content-Type";
  }
  return response;
}

}  // namespace voxql::http
