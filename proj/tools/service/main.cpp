// relim-serve: the /v1 HTTP interface.
//
// Bind address, port and CORS origin come from flags, falling back to
// RELIM_HOST, RELIM_PORT and RELIM_CORS_ORIGIN.

#include <CLI11.hpp>
#include <httplib.h>

#include <cstdlib>
#include <iostream>

#include "service.hpp"

namespace {

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relim-serve: HTTP JSON interface to the relim engine"};
  std::string host = env_or("RELIM_HOST", "127.0.0.1");
  int port = std::atoi(env_or("RELIM_PORT", "8765").c_str());
  relim::service::Options options;
  options.cors_origin = env_or("RELIM_CORS_ORIGIN", options.cors_origin);
  long long budget_ms = options.budget.count();
  app.add_option("--host", host, "Bind address");
  app.add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
  app.add_option("--cors-origin", options.cors_origin, "Allowed browser origin");
  app.add_option("--budget-ms", budget_ms, "Synchronous request budget")->check(CLI::PositiveNumber);
  app.add_option("--threads", options.threads, "Enumeration threads per request")->check(CLI::Range(1u, 256u));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  options.budget = std::chrono::milliseconds(budget_ms);

  relim::service::Service service(options);
  httplib::Server server;
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    const auto out = service.handle({req.method, req.path, req.body});
    res.status = out.status;
    for (const auto& [k, v] : out.headers) res.set_header(k, v);
    if (!out.content_type.empty()) res.set_content(out.body, out.content_type);
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  server.Put(".*", forward);
  server.Delete(".*", forward);
  server.Options(".*", forward);

  std::cerr << "relim-serve listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}
