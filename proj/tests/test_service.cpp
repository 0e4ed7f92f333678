#include <filesystem>
#include <thread>

#include <catch2/catch_amalgamated.hpp>

#include "qlab/http.hpp"
#include "qlab/service.hpp"

using namespace qlab;

namespace {

const std::string kA2 = R"({"format":"qlab-quiver-v1","vertices":["1","2"],"b":[["1","2",1]]})";
const std::string kA3 =
    R"({"format":"qlab-quiver-v1","vertices":["1","2","3"],"b":[["1","2",1],["2","3",1]]})";

std::string create(SessionService& service, const std::string& quiver) {
  const auto r = service.create(quiver);
  REQUIRE(r.status == 201);
  return r.body["session_id"].get<std::string>();
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST_CASE("session lifecycle") {
  SessionService service;
  const auto id = create(service, kA2);

  auto r = service.get(id);
  CHECK(r.status == 200);
  CHECK(r.body["g_cluster"] == parse("[[1,0],[0,1]]"));
  CHECK(r.body["path"] == parse("[]"));
  CHECK(r.body["det"] == "1");
  CHECK(r.body["sign_coherent"] == true);

  r = service.mutate_vertex(id, R"({"vertex":"1"})");
  CHECK(r.status == 200);
  CHECK(r.body["g_cluster"] == parse("[[-1,1],[0,1]]"));
  CHECK(r.body["det"] == "-1");
  CHECK(r.body["coordinate_signs"] == parse("[-1,1]"));
  CHECK(r.body["quiver"]["b"] == parse(R"([["2","1",1]])"));

  r = service.mutate_vertex(id, R"({"vertex":"1"})");
  CHECK(r.body["g_cluster"] == parse("[[1,0],[0,1]]"));
  CHECK(r.body["path"] == parse(R"(["1","1"])"));

  r = service.undo(id);
  CHECK(r.body["path"] == parse(R"(["1"])"));
  service.undo(id);
  r = service.undo(id);
  CHECK(r.status == 200);
  CHECK(r.body["path"] == parse("[]"));
}

TEST_CASE("session errors") {
  SessionService service;
  const auto id = create(service, kA2);
  CHECK(service.mutate_vertex(id, R"({"vertex":"9"})").status == 400);
  CHECK(service.mutate_vertex(id, "nope").status == 400);
  CHECK(service.mutate_vertex(id, R"({"v":"1"})").status == 400);
  CHECK(service.get("deadbeef").status == 404);
  CHECK(service.mutate_vertex("deadbeef", R"({"vertex":"1"})").status == 404);
  CHECK(service.undo("deadbeef").status == 404);
  CHECK(service.oracle("deadbeef", "1").status == 404);
  CHECK(service.oracle(id, "9").status == 400);
  CHECK(service.create("{}").status == 400);
  CHECK(service.create("not json").status == 400);
}

TEST_CASE("oracle endpoint") {
  SessionService service;
  const auto id = create(service, kA2);
  auto r = service.oracle(id, "1");
  CHECK(r.status == 200);
  CHECK(r.body["polynomial"] == "x1");
  service.mutate_vertex(id, R"({"vertex":"1"})");
  r = service.oracle(id, "1");
  CHECK(r.body["polynomial"] == "(y1+x2)*x1^-1");
  CHECK(r.body["g"] == parse("[-1,1]"));
  CHECK(r.body["agree"] == true);

  SessionService capped(ServiceConfig{1, std::nullopt});
  const auto small = create(capped, kA2);
  CHECK(capped.oracle(small, "1").status == 422);
}

TEST_CASE("oracle limit from environment") {
  ::setenv("QLAB_ORACLE_MAX_N", "3", 1);
  CHECK(ServiceConfig::from_env().oracle_max_n == 3);
  ::setenv("QLAB_ORACLE_MAX_N", "x", 1);
  CHECK_THROWS_AS(ServiceConfig::from_env(), FormatError);
  ::unsetenv("QLAB_ORACLE_MAX_N");
  CHECK(ServiceConfig::from_env().oracle_max_n == 6);
}

TEST_CASE("snapshots") {
  SessionService service;
  const auto id = create(service, kA3);
  service.mutate_vertex(id, R"({"vertex":"2"})");
  const auto snap = service.snapshot(id);
  CHECK(snap.body["format"] == "qlab-session-v1");
  CHECK(snap.body["path"] == parse(R"(["2"])"));

  const auto resumed = create(service, snap.body.dump());
  CHECK(service.get(resumed).body["g_cluster"] == service.get(id).body["g_cluster"]);

  const auto dir = std::filesystem::temp_directory_path() / "qlab_snapshot_test";
  std::filesystem::remove_all(dir);
  std::string persisted;
  {
    SessionService writer(ServiceConfig{6, dir});
    persisted = create(writer, kA3);
    writer.mutate_vertex(persisted, R"({"vertex":"1"})");
    writer.mutate_vertex(persisted, R"({"vertex":"2"})");
  }
  SessionService reader(ServiceConfig{6, dir});
  const auto r = reader.get(persisted);
  CHECK(r.status == 200);
  CHECK(r.body["path"] == parse(R"(["1","2"])"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("requests on one session are serialized") {
  SessionService service;
  const auto shared = create(service, kA3);
  std::vector<std::thread> workers;
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([&, t] {
      const auto own = create(service, kA2);
      for (int i = 0; i < 25; ++i) {
        service.mutate_vertex(shared, R"({"vertex":")" + std::to_string(1 + (t + i) % 3) + "\"}");
        service.mutate_vertex(own, R"({"vertex":"1"})");
      }
      REQUIRE(service.get(own).body["path"].size() == 25);
    });
  }
  for (auto& w : workers) w.join();
  CHECK(service.get(shared).body["path"].size() == 200);
}

TEST_CASE("HTTP binding") {
  SessionService service;
  httplib::Server server;
  mount_routes(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/health");
  REQUIRE(res);
  CHECK(res->status == 200);

  res = client.Post("/api/session", kA2, "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  const auto id = parse(res->body)["session_id"].get<std::string>();

  res = client.Post("/api/session/" + id + "/mutate", R"({"vertex":"1"})", "application/json");
  REQUIRE(res);
  CHECK(parse(res->body)["g_cluster"] == parse("[[-1,1],[0,1]]"));

  res = client.Get("/api/session/" + id);
  CHECK(parse(res->body)["g_cluster"] == parse("[[-1,1],[0,1]]"));

  res = client.Get("/api/session/" + id + "/oracle?l=1");
  CHECK(res->status == 200);
  CHECK(parse(res->body)["polynomial"] == "(y1+x2)*x1^-1");

  res = client.Get("/api/session/" + id + "/oracle");
  CHECK(res->status == 400);

  res = client.Post("/api/session/" + id + "/mutate", R"({"vertex":"7"})", "application/json");
  CHECK(res->status == 400);

  res = client.Post("/api/session/" + id + "/undo", "", "application/json");
  CHECK(parse(res->body)["g_cluster"] == parse("[[1,0],[0,1]]"));

  res = client.Get("/api/session/abc123");
  CHECK(res->status == 404);
  CHECK(res->get_header_value("Content-Type") == "application/json");

  server.stop();
  thread.join();
}
