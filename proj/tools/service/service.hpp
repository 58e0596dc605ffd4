#pragma once

// HTTP-agnostic core of relim-serve. `handle` maps a request to a response;
// the server binary only moves bytes.

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "commands.hpp"

namespace relim::service {

struct Request {
  std::string method;
  std::string path;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
  std::vector<std::pair<std::string, std::string>> headers;
};

struct Options {
  /// Synchronous verbs that run longer are cancelled with 503.
  std::chrono::milliseconds budget{5000};
  /// Value of Access-Control-Allow-Origin.
  std::string cors_origin = "http://localhost:5173";
  unsigned threads = 1;
};

struct Job;
struct Session;

/// Endpoints, all under /v1:
///   GET  /v1                         endpoint list
///   POST /v1/<verb>                  any CLI verb; body is its argument object.
///                                    rere and sequence answer 202 with a job.
///   POST /v1/jobs {op, args}         start any verb asynchronously
///   GET  /v1/jobs/:id                state and progress
///   GET  /v1/jobs/:id/result         result body (202 while running)
///   DELETE /v1/jobs/:id              cancel
///   POST /v1/sessions                create; GET lists; /import restores an export
///   GET|DELETE /v1/sessions/:id      export or drop
///   PUT|GET /v1/sessions/:id/problems/:name
///   POST /v1/sessions/:id/steps {op, input, args}
///   GET  /v1/sessions/:id/history
///
/// Verb results are the exact bytes `relim --format json` prints. Timing and
/// enumeration statistics travel in the X-Relim-Stats header.
class Service {
 public:
  explicit Service(Options options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response handle(const Request& request);

 private:
  Response route(const Request& request);
  Response run_verb(const std::string& verb, const Json& args);
  Response start_job(const std::string& verb, const Json& args);
  Response job_status(const std::string& id);
  Response job_result(const std::string& id);
  Response cancel_job(const std::string& id);
  std::shared_ptr<Job> find_job(const std::string& id);
  std::shared_ptr<Session> find_session(const std::string& id);
  Response create_session(const Json& imported);
  Response session_step(Session& session, const Json& body);
  Json resolve_refs(const Json& args);

  Options options_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  unsigned long long next_id_ = 1;
};

}  // namespace relim::service
