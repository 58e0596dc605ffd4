#include "service.hpp"

#include <atomic>
#include <condition_variable>
#include <optional>
#include <sstream>
#include <thread>

#include "relim/round_elim.hpp"

namespace relim::service {

namespace {

using Clock = std::chrono::steady_clock;

// Verbs that always run as jobs.
bool async_only(const std::string& verb) { return verb == "rere" || verb == "sequence"; }

Response json_response(int status, const Json& body) { return {status, dump(body), "application/json", {}}; }

Response error_response(int status, const std::string& code, const std::string& message,
                        const std::optional<SearchStats>& stats = std::nullopt) {
  Json body{{"error", {{"code", code}, {"message", message}}}};
  if (stats) body["stats"] = to_json(*stats);
  return json_response(status, body);
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(path.substr(0, path.find('?')));
  while (std::getline(in, part, '/')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

Json parse_body(const std::string& body) {
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) return Json::object();
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw commands::UsageError(std::string("request body is not JSON: ") + e.what());
  }
}

class NotFound : public Error {
 public:
  using Error::Error;
};

// Maps engine exceptions to HTTP errors. Anything else propagates.
template <class F>
Response guarded(F&& f) {
  try {
    return f();
  } catch (const NotFound& e) {
    return error_response(404, "not_found", e.what());
  } catch (const commands::UsageError& e) {
    return error_response(400, "bad_request", e.what());
  } catch (const ParseError& e) {
    return error_response(400, "parse_error", e.what());
  } catch (const PreconditionError& e) {
    return error_response(422, "precondition", e.what());
  } catch (const BlowUpError& e) {
    return error_response(503, "blow_up", e.what(), e.stats());
  } catch (const CancelledError& e) {
    return error_response(409, "cancelled", e.what());
  } catch (const Error& e) {
    return error_response(500, "engine_error", e.what());
  }
}

}  // namespace

struct Job {
  enum class State { running, done, failed, cancelled };

  std::string id;
  std::string verb;
  std::atomic<bool> cancel{false};
  std::mutex mutex;
  std::condition_variable finished;
  State state = State::running;
  std::optional<SearchStats> progress;
  Response response;
  double seconds = 0;

  static const char* name(State s) {
    switch (s) {
      case State::running: return "running";
      case State::done: return "done";
      case State::failed: return "failed";
      case State::cancelled: return "cancelled";
    }
    return "unknown";
  }
};

struct Session {
  std::mutex mutex;
  std::string id;
  std::string name;
  /// Stored problems in insertion order: {name, problem, text, lifted}.
  std::vector<Json> problems;
  std::vector<Json> steps;

  const Json* find(const std::string& problem) const {
    for (const auto& p : problems) {
      if (p.at("name") == problem) return &p;
    }
    return nullptr;
  }
};

namespace {

Json stats_header(const Job& job) {
  Json stats{{"seconds", job.seconds}, {"search", job.progress ? to_json(*job.progress) : Json(nullptr)}};
  return stats;
}

void execute(const std::shared_ptr<Job>& job, Json args, unsigned threads) {
  commands::Context ctx;
  ctx.cancel = &job->cancel;
  ctx.threads = threads;
  ctx.progress = [job](const SearchStats& s) {
    std::lock_guard lock(job->mutex);
    job->progress = s;
  };
  const auto start = Clock::now();
  std::optional<commands::Output> output;
  Response response = guarded([&] {
    output = commands::run(job->verb, args, ctx);
    return Response{};
  });
  std::lock_guard lock(job->mutex);
  job->seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (output) {
    if (output->stats) job->progress = output->stats;
    job->state = Job::State::done;
    Json stats = stats_header(*job);
    stats["exit_code"] = output->exit_code;
    job->response = {200, dump(output->json), "application/json", {{"X-Relim-Stats", stats.dump()}}};
  } else {
    job->state = response.status == 409 ? Job::State::cancelled : Job::State::failed;
    job->response = response;
  }
  job->finished.notify_all();
}

Json entry(const std::string& name, const Json& problem_json, const Json& lifted) {
  const Problem p = problem_from_json(problem_json);
  return {{"name", name}, {"problem", to_json(p)}, {"lifted", lifted}};
}

}  // namespace

Service::Service(Options options) : options_(std::move(options)) {}

Service::~Service() {
  std::vector<std::shared_ptr<Job>> jobs;
  {
    std::lock_guard lock(mutex_);
    for (auto& [id, job] : jobs_) jobs.push_back(job);
  }
  for (auto& job : jobs) {
    job->cancel = true;
    std::unique_lock lock(job->mutex);
    job->finished.wait(lock, [&] { return job->state != Job::State::running; });
  }
}

Response Service::handle(const Request& request) {
  Response r;
  if (request.method == "OPTIONS") {
    r.status = 204;
    r.content_type.clear();
  } else {
    r = guarded([&] { return route(request); });
  }
  r.headers.emplace_back("Access-Control-Allow-Origin", options_.cors_origin);
  r.headers.emplace_back("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS");
  r.headers.emplace_back("Access-Control-Allow-Headers", "Content-Type");
  r.headers.emplace_back("Access-Control-Expose-Headers", "X-Relim-Stats");
  return r;
}

Response Service::route(const Request& req) {
  const auto parts = split_path(req.path);
  const std::string& m = req.method;
  if (parts.empty() || parts[0] != "v1") return error_response(404, "not_found", "unknown path " + req.path);
  const std::size_t n = parts.size();

  if (n == 1 && m == "GET") {
    Json verbs = commands::verbs();
    return json_response(200, {{"version", "v1"},
                               {"verbs", verbs},
                               {"async_verbs", {"rere", "sequence"}},
                               {"resources", {"/v1/jobs", "/v1/sessions"}}});
  }
  if (n == 2 && m == "GET" && parts[1] == "health") return json_response(200, {{"status", "ok"}});

  if (parts[1] == "jobs") {
    if (n == 2 && m == "POST") {
      const Json body = parse_body(req.body);
      if (!body.contains("op") || !body.at("op").is_string()) throw commands::UsageError("missing string 'op'");
      const std::string op = body.at("op").get<std::string>();
      if (!commands::is_verb(op)) return error_response(404, "not_found", "unknown verb '" + op + "'");
      return start_job(op, resolve_refs(body.value("args", Json::object())));
    }
    if (n == 3 && m == "GET") return job_status(parts[2]);
    if (n == 4 && m == "GET" && parts[3] == "result") return job_result(parts[2]);
    if (n == 3 && m == "DELETE") return cancel_job(parts[2]);
    return error_response(404, "not_found", "unknown job route");
  }

  if (parts[1] == "sessions") {
    if (n == 2 && m == "POST") return create_session(parse_body(req.body));
    if (n == 3 && m == "POST" && parts[2] == "import") return create_session(parse_body(req.body));
    if (n == 2 && m == "GET") {
      Json list = Json::array();
      std::lock_guard lock(mutex_);
      for (const auto& [id, s] : sessions_) {
        std::lock_guard session_lock(s->mutex);
        list.push_back({{"id", id}, {"name", s->name}, {"problems", s->problems.size()}, {"steps", s->steps.size()}});
      }
      return json_response(200, {{"sessions", list}});
    }
    if (n < 3) return error_response(404, "not_found", "unknown session route");
    auto session = find_session(parts[2]);
    if (!session) return error_response(404, "not_found", "unknown session '" + parts[2] + "'");
    if (n == 3 && m == "DELETE") {
      std::lock_guard lock(mutex_);
      sessions_.erase(parts[2]);
      return json_response(200, {{"deleted", parts[2]}});
    }
    if ((n == 3 || (n == 4 && parts[3] == "export")) && m == "GET") {
      std::lock_guard lock(session->mutex);
      return json_response(200, {{"id", session->id}, {"name", session->name}, {"problems", session->problems},
                                 {"steps", session->steps}});
    }
    if (n == 5 && parts[3] == "problems") {
      const std::string& name = parts[4];
      if (m == "GET") {
        std::lock_guard lock(session->mutex);
        const Json* p = session->find(name);
        if (!p) return error_response(404, "not_found", "unknown problem '" + name + "'");
        return json_response(200, *p);
      }
      if (m == "PUT") {
        const Json body = parse_body(req.body);
        if (!body.contains("problem")) throw commands::UsageError("missing 'problem'");
        const auto parsed = commands::run("parse", {{"problem", body.at("problem")}});
        Json e = entry(name, parsed.json, nullptr);
        std::lock_guard lock(session->mutex);
        if (session->find(name)) {
          return error_response(409, "conflict", "problem '" + name + "' exists; stored problems are immutable");
        }
        session->problems.push_back(e);
        return json_response(201, e);
      }
    }
    if (n == 4 && parts[3] == "steps" && m == "POST") return session_step(*session, parse_body(req.body));
    if (n == 4 && parts[3] == "history" && m == "GET") {
      std::lock_guard lock(session->mutex);
      Json nodes = Json::array();
      Json roots = Json::array();
      for (const auto& s : session->steps) {
        Json node = s;
        node["children"] = Json::array();
        for (const auto& c : session->steps) {
          if (c.at("parent") == s.at("id")) node["children"].push_back(c.at("id"));
        }
        if (s.at("parent").is_null()) roots.push_back(s.at("id"));
        nodes.push_back(node);
      }
      return json_response(200, {{"session", session->id}, {"roots", roots}, {"nodes", nodes}});
    }
    return error_response(404, "not_found", "unknown session route");
  }

  if (n == 2 && m == "POST") {
    const std::string& verb = parts[1];
    if (!commands::is_verb(verb)) return error_response(404, "not_found", "unknown verb '" + verb + "'");
    const Json args = resolve_refs(parse_body(req.body));
    if (async_only(verb)) return start_job(verb, args);
    return run_verb(verb, args);
  }
  return error_response(404, "not_found", "unknown route " + m + " " + req.path);
}

Json Service::resolve_refs(const Json& args) {
  if (!args.is_object()) throw commands::UsageError("arguments must be a JSON object");
  Json out = args;
  for (const char* key : {"problem", "other", "target"}) {
    if (!out.contains(key) || !out.at(key).is_object() || !out.at(key).contains("ref")) continue;
    if (!out.contains("session") || !out.at("session").is_string()) {
      throw commands::UsageError("a {\"ref\": ...} argument needs a 'session'");
    }
    auto session = find_session(out.at("session").get<std::string>());
    if (!session) throw NotFound("unknown session '" + out.at("session").get<std::string>() + "'");
    std::lock_guard lock(session->mutex);
    const Json* p = session->find(out.at(key).at("ref").get<std::string>());
    if (!p) throw NotFound("unknown problem ref '" + out.at(key).at("ref").get<std::string>() + "'");
    out[key] = std::string(key) == "target" && !p->at("lifted").is_null() ? p->at("lifted") : p->at("problem");
  }
  out.erase("session");
  return out;
}

Response Service::run_verb(const std::string& verb, const Json& args) {
  auto job = std::make_shared<Job>();
  job->verb = verb;
  std::thread([job, args, threads = options_.threads] { execute(job, args, threads); }).detach();
  std::unique_lock lock(job->mutex);
  if (!job->finished.wait_for(lock, options_.budget, [&] { return job->state != Job::State::running; })) {
    job->cancel = true;
    // Keep the abandoned run reachable so the destructor can wait for it.
    lock.unlock();
    std::lock_guard service_lock(mutex_);
    job->id = "abandoned-" + std::to_string(next_id_++);
    jobs_[job->id] = job;
    return error_response(503, "budget", verb + " exceeded the " + std::to_string(options_.budget.count()) +
                                             " ms synchronous budget; start it with POST /v1/jobs");
  }
  return job->response;
}

Response Service::start_job(const std::string& verb, const Json& args) {
  auto job = std::make_shared<Job>();
  job->verb = verb;
  {
    std::lock_guard lock(mutex_);
    job->id = "j" + std::to_string(next_id_++);
    jobs_[job->id] = job;
  }
  std::thread([job, args, threads = options_.threads] { execute(job, args, threads); }).detach();
  return json_response(202, {{"job", job->id},
                             {"verb", verb},
                             {"status_url", "/v1/jobs/" + job->id},
                             {"result_url", "/v1/jobs/" + job->id + "/result"}});
}

std::shared_ptr<Job> Service::find_job(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = jobs_.find(id);
  return it == jobs_.end() ? nullptr : it->second;
}

std::shared_ptr<Session> Service::find_session(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Response Service::job_status(const std::string& id) {
  auto job = find_job(id);
  if (!job) return error_response(404, "not_found", "unknown job '" + id + "'");
  std::lock_guard lock(job->mutex);
  Json body{{"job", job->id},
            {"verb", job->verb},
            {"state", Job::name(job->state)},
            {"progress", job->progress ? to_json(*job->progress) : Json(nullptr)}};
  if (job->state == Job::State::failed || job->state == Job::State::cancelled) {
    body["error"] = Json::parse(job->response.body).at("error");
    body["status"] = job->response.status;
  }
  return json_response(200, body);
}

Response Service::job_result(const std::string& id) {
  auto job = find_job(id);
  if (!job) return error_response(404, "not_found", "unknown job '" + id + "'");
  std::unique_lock lock(job->mutex);
  if (job->state == Job::State::running) {
    lock.unlock();
    Response r = job_status(id);
    r.status = 202;
    return r;
  }
  return job->response;
}

Response Service::cancel_job(const std::string& id) {
  auto job = find_job(id);
  if (!job) return error_response(404, "not_found", "unknown job '" + id + "'");
  job->cancel = true;
  std::lock_guard lock(job->mutex);
  return json_response(200, {{"job", id}, {"cancel_requested", true}, {"state", Job::name(job->state)}});
}

Response Service::create_session(const Json& imported) {
  auto s = std::make_shared<Session>();
  if (!imported.is_null()) {
    if (!imported.is_object()) throw commands::UsageError("an import must be a session export object");
    s->name = imported.value("name", "");
    for (const auto& p : imported.value("problems", Json::array())) {
      if (!p.contains("name") || !p.contains("problem")) throw commands::UsageError("problem entries need name and problem");
      const Json lifted = p.value("lifted", Json());
      if (!lifted.is_null()) lifted_from_json(lifted);
      s->problems.push_back(entry(p.at("name").get<std::string>(), p.at("problem"), lifted));
    }
    for (const auto& step : imported.value("steps", Json::array())) {
      for (const char* key : {"id", "op", "input", "output", "parent"}) {
        if (!step.contains(key)) throw commands::UsageError(std::string("step entries need '") + key + "'");
      }
      s->steps.push_back(step);
    }
  }
  std::lock_guard lock(mutex_);
  s->id = "s" + std::to_string(next_id_++);
  sessions_[s->id] = s;
  return json_response(201, {{"id", s->id}, {"problems", s->problems.size()}, {"steps", s->steps.size()}});
}

Response Service::session_step(Session& session, const Json& body) {
  if (!body.contains("op") || !body.at("op").is_string()) throw commands::UsageError("missing string 'op'");
  if (!body.contains("input") || !body.at("input").is_string()) throw commands::UsageError("missing string 'input'");
  const std::string op = body.at("op").get<std::string>();
  const std::string input = body.at("input").get<std::string>();
  if (op != "re" && op != "rere" && op != "simplify" && op != "rename") {
    throw commands::UsageError("step op must be re, rere, simplify or rename");
  }
  Json args = body.value("args", Json::object());
  Json parent = nullptr;
  {
    std::lock_guard lock(session.mutex);
    const Json* p = session.find(input);
    if (!p) return error_response(404, "not_found", "unknown problem '" + input + "'");
    if (op == "rename") {
      if (p->at("lifted").is_null()) throw commands::UsageError("rename needs a re or rere result as input");
      args["lifted"] = p->at("lifted");
    } else {
      args["problem"] = p->at("problem");
    }
    for (const auto& s : session.steps) {
      if (s.at("output") == input) parent = s.at("id");
    }
  }
  commands::Context ctx;
  ctx.threads = options_.threads;
  const auto out = commands::run(op, args, ctx);
  const bool lifted = op != "simplify";
  std::lock_guard lock(session.mutex);
  const int id = static_cast<int>(session.steps.size()) + 1;
  const std::string name = "step" + std::to_string(id);
  session.problems.push_back(entry(name, lifted ? out.json.at("problem") : out.json, lifted ? out.json : Json()));
  args.erase("problem");
  args.erase("lifted");
  Json node{{"id", id}, {"op", op}, {"input", input}, {"output", name}, {"parent", parent}, {"args", args}};
  session.steps.push_back(node);
  return json_response(201, {{"step", node}, {"result", out.json}});
}

}  // namespace relim::service
