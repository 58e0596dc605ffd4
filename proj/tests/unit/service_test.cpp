#include <doctest.h>

#include <chrono>
#include <thread>

#include "commands.hpp"
#include "helpers.hpp"
#include "relim/family.hpp"
#include "service.hpp"

using namespace relim;
using service::Request;
using service::Response;
using service::Service;

namespace {

Response call(Service& s, const std::string& method, const std::string& path, const Json& body = nullptr) {
  return s.handle({method, path, body.is_null() ? "" : body.dump()});
}

Json body(const Response& r) { return Json::parse(r.body); }

std::string header(const Response& r, const std::string& name) {
  for (const auto& [k, v] : r.headers)
    if (k == name) return v;
  return {};
}

// rere on this problem runs for tens of seconds.
std::string slow_problem() {
  const std::string labels = "ABCDEFGHIJ";
  std::string nodes, edges;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      nodes += std::string("[") + labels[i] + " " + labels[j] + "]^4 " + labels[(i + 3) % 10] + "\n";
      edges += std::string(1, labels[i]) + " " + labels[j] + "\n";
    }
  return "delta: 5\nnodes:\n" + nodes + "edges:\n" + edges;
}

Json wait_for_job(Service& s, const std::string& id, std::chrono::seconds limit) {
  auto deadline = std::chrono::steady_clock::now() + limit;
  Json status;
  do {
    status = body(call(s, "GET", "/v1/jobs/" + id));
    if (status.at("state") != "running") return status;
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  } while (std::chrono::steady_clock::now() < deadline);
  return status;
}

}  // namespace

TEST_SUITE("api-service") {
  TEST_CASE("index, health and CORS") {
    Service s;
    Response index = call(s, "GET", "/v1");
    CHECK(index.status == 200);
    CHECK(body(index).at("verbs").size() == commands::verbs().size());
    CHECK(body(call(s, "GET", "/v1/health")).at("status") == "ok");
    CHECK(header(index, "Access-Control-Allow-Origin") == "http://localhost:5173");
    CHECK(call(s, "OPTIONS", "/v1/re").status == 204);
    CHECK(call(s, "GET", "/v2").status == 404);
  }

  TEST_CASE("re body equals CLI JSON bytes") {
    Service s;
    Response r = call(s, "POST", "/v1/re", {{"problem", testing::golden("mis3.problem")}});
    CHECK(r.status == 200);
    CHECK(r.body == testing::golden("mis3_re.json"));
    Json stats = Json::parse(header(r, "X-Relim-Stats"));
    CHECK(stats.at("exit_code") == 0);
    CHECK(stats.contains("seconds"));
  }

  TEST_CASE("verbs agree with the command layer") {
    Service s;
    const std::vector<std::pair<std::string, Json>> cases{
        {"parse", {{"problem", testing::golden("family_4_2_1.problem")}}},
        {"diagram", {{"problem", testing::golden("family_4_2_1.problem")}, {"side", "edge"}}},
        {"family", {{"delta", 4}, {"a", 2}, {"x", 1}}},
        {"failure-bound", {{"problem", testing::golden("family_4_2_1.problem")}}},
        {"relax-check", {{"from", "M X"}, {"to", "[M X] X"}}},
        {"statement", {{"delta", 4}, {"k", 0}}},
    };
    for (const auto& [verb, args] : cases) {
      Response r = call(s, "POST", "/v1/" + verb, args);
      CHECK_MESSAGE(r.status == 200, verb);
      CHECK(r.body == dump(commands::run(verb, args).json));
    }
  }

  TEST_CASE("zero-round on the family") {
    Service s;
    Response r = call(s, "POST", "/v1/zero-round", {{"problem", testing::golden("family_4_2_1.problem")}});
    CHECK(r.status == 200);
    CHECK(r.body == testing::golden("zero_round_4_2_1.json"));
    CHECK(body(r).at("holds") == false);
    CHECK(Json::parse(header(r, "X-Relim-Stats")).at("exit_code") == 1);
  }

  TEST_CASE("error mapping") {
    Service s;
    CHECK(call(s, "POST", "/v1/re", nullptr).status == 400);
    CHECK(s.handle({"POST", "/v1/re", "{not json"}).status == 400);
    Response parse = call(s, "POST", "/v1/re", {{"problem", "delta: 3\nnodes:\nM^2\nedges:\nM M"}});
    CHECK(parse.status == 400);
    CHECK(body(parse).at("error").at("code") == "parse_error");
    Response pre = call(s, "POST", "/v1/family", {{"delta", 4}, {"a", 9}, {"x", 0}});
    CHECK(pre.status == 422);
    CHECK(body(pre).at("error").at("code") == "precondition");
    Response blow = call(s, "POST", "/v1/re",
                         {{"problem", testing::golden("family_5_4_1.problem")}, {"max_labels", 2}});
    CHECK(blow.status == 503);
    CHECK(body(blow).at("error").at("code") == "blow_up");
    CHECK(body(blow).contains("stats"));
    CHECK(call(s, "POST", "/v1/unknown-verb", Json::object()).status == 404);
    CHECK(call(s, "GET", "/v1/jobs/j999").status == 404);
    CHECK(call(s, "GET", "/v1/sessions/s999").status == 404);
  }

  TEST_CASE("synchronous budget") {
    service::Options options;
    options.budget = std::chrono::milliseconds(1);
    Service s(options);
    Response r = call(s, "POST", "/v1/speedup-verify", {{"family", {{"delta", 5}, {"a", 5}, {"x", 0}}}});
    CHECK(r.status == 503);
    CHECK(body(r).at("error").at("code") == "budget");
  }

  TEST_CASE("rere runs as a job") {
    Service s;
    LiftedProblem first = re(make_mis_problem(3));
    Json args{{"problem", to_json(first.problem)}};
    Response started = call(s, "POST", "/v1/rere", args);
    REQUIRE(started.status == 202);
    std::string id = body(started).at("job");
    Json status = wait_for_job(s, id, std::chrono::seconds(30));
    CHECK(status.at("state") == "done");
    Response result = call(s, "GET", "/v1/jobs/" + id + "/result");
    CHECK(result.status == 200);
    CHECK(result.body == dump(commands::run("rere", args).json));
    Response generic = call(s, "POST", "/v1/jobs", {{"op", "zero-round"}, {"args", {{"problem", testing::golden("trivial.problem")}}}});
    CHECK(generic.status == 202);
    CHECK(wait_for_job(s, body(generic).at("job"), std::chrono::seconds(10)).at("state") == "done");
  }

  TEST_CASE("cancelling a long rere") {
    Service s;
    Response started = call(s, "POST", "/v1/rere", {{"problem", slow_problem()}});
    REQUIRE(started.status == 202);
    std::string id = body(started).at("job");
    std::this_thread::sleep_for(std::chrono::milliseconds(200));
    CHECK(call(s, "GET", "/v1/jobs/" + id + "/result").status == 202);
    Response cancel = call(s, "DELETE", "/v1/jobs/" + id);
    CHECK(cancel.status == 200);
    Json status = wait_for_job(s, id, std::chrono::seconds(10));
    CHECK(status.at("state") == "cancelled");
    Response result = call(s, "GET", "/v1/jobs/" + id + "/result");
    CHECK(result.status == 409);
    CHECK(body(result).at("error").at("code") == "cancelled");
  }

  TEST_CASE("session history") {
    Service s;
    Response created = call(s, "POST", "/v1/sessions", {{"name", "mis"}});
    REQUIRE(created.status == 201);
    std::string sid = body(created).at("id");
    std::string base = "/v1/sessions/" + sid;
    CHECK(call(s, "PUT", base + "/problems/mis3", {{"problem", testing::golden("mis3.problem")}}).status == 201);
    CHECK(call(s, "PUT", base + "/problems/mis3", {{"problem", testing::golden("mis3.problem")}}).status == 409);
    CHECK(call(s, "GET", base + "/problems/mis3").status == 200);
    CHECK(call(s, "GET", base + "/problems/nothing").status == 404);

    Response first = call(s, "POST", base + "/steps", {{"op", "re"}, {"input", "mis3"}});
    REQUIRE(first.status == 201);
    CHECK(dump(body(first).at("result")) == testing::golden("mis3_re.json"));
    Response second = call(s, "POST", base + "/steps",
                           {{"op", "rename"}, {"input", "step1"}, {"args", {{"rename", "W = O P\n"}}}});
    REQUIRE(second.status == 201);

    Json history = body(call(s, "GET", base + "/history"));
    REQUIRE(history.at("nodes").size() == 2);
    CHECK(history.at("roots") == Json::array({1}));
    CHECK(history.at("nodes")[0].at("children") == Json::array({2}));
    CHECK(history.at("nodes")[1].at("parent") == 1);

    // Refs resolve against stored problems.
    Response ref = call(s, "POST", "/v1/zero-round", {{"session", sid}, {"problem", {{"ref", "mis3"}}}});
    CHECK(ref.status == 200);
    CHECK(body(ref).at("holds") == false);
    CHECK(call(s, "POST", "/v1/zero-round", {{"session", sid}, {"problem", {{"ref", "gone"}}}}).status == 404);

    // Export and import reproduce the session.
    Response exported = call(s, "GET", base + "/export");
    REQUIRE(exported.status == 200);
    Response imported = s.handle({"POST", "/v1/sessions/import", exported.body});
    REQUIRE(imported.status == 201);
    std::string copy = body(imported).at("id");
    CHECK(body(call(s, "GET", "/v1/sessions/" + copy + "/history")).at("nodes") == history.at("nodes"));
    CHECK(call(s, "DELETE", base).status == 200);
    CHECK(call(s, "GET", base).status == 404);
  }
}
