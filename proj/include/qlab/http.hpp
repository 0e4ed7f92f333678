#pragma once

#include <string>

#include "httplib.h"
#include "qlab/service.hpp"

namespace qlab {

/// Routes the session API onto an httplib server:
///   GET  /api/health
///   POST /api/session                     {quiver} -> {session_id}
///   GET  /api/session/{id}                current node
///   POST /api/session/{id}/mutate         {vertex} -> new node
///   POST /api/session/{id}/undo           parent node
///   GET  /api/session/{id}/oracle?l=...   cluster variable and g-vector
///   GET  /api/session/{id}/snapshot       qlab-session-v1 document
inline void mount_routes(httplib::Server& server, SessionService& service) {
  auto reply = [](httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };

  server.Get("/api/health", [&service, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service.health());
  });
  server.Post("/api/session", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.create(req.body));
  });
  server.Get(R"(/api/session/([0-9a-f]+))",
             [&service, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, service.get(req.matches[1]));
             });
  server.Post(R"(/api/session/([0-9a-f]+)/mutate)",
              [&service, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, service.mutate_vertex(req.matches[1], req.body));
              });
  server.Post(R"(/api/session/([0-9a-f]+)/undo)",
              [&service, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, service.undo(req.matches[1]));
              });
  server.Get(R"(/api/session/([0-9a-f]+)/oracle)",
             [&service, reply](const httplib::Request& req, httplib::Response& res) {
               if (!req.has_param("l")) {
                 reply(res, {400, {{"error", "missing query parameter l"}}});
                 return;
               }
               reply(res, service.oracle(req.matches[1], req.get_param_value("l")));
             });
  server.Get(R"(/api/session/([0-9a-f]+)/snapshot)",
             [&service, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, service.snapshot(req.matches[1]));
             });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty())
      res.set_content(OrderedJson{{"error", "not found"}}.dump(), "application/json");
  });
}

}  // namespace qlab
