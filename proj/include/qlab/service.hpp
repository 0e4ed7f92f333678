#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

#include "qlab/engine.hpp"
#include "qlab/oracle.hpp"
#include "qlab/quiver_json.hpp"
#include "qlab/verifier.hpp"

namespace qlab {

inline constexpr std::string_view kSessionFormat = "qlab-session-v1";

struct ServiceConfig {
  /// Oracle requests on quivers with more vertices are refused with 422.
  std::size_t oracle_max_n = 6;
  /// When set, every session is written to <dir>/<id>.json after each change
  /// and existing snapshots are loaded at startup.
  std::optional<std::filesystem::path> snapshot_dir;

  /// Reads QLAB_ORACLE_MAX_N.
  static ServiceConfig from_env() {
    ServiceConfig cfg;
    if (const char* v = std::getenv("QLAB_ORACLE_MAX_N")) {
      try {
        cfg.oracle_max_n = std::stoul(v);
      } catch (const std::exception&) {
        throw FormatError("QLAB_ORACLE_MAX_N must be a non-negative integer");
      }
    }
    return cfg;
  }
};

struct ApiResponse {
  int status;
  OrderedJson body;
};

/// JSON view of the node reached by `path`: the mutated quiver, dense B,
/// g-dagger cluster with per-coordinate hyperquadrant signs, and det.
inline OrderedJson node_state_json(const SkewMatrix& b0, const MutationPath& path) {
  const auto state = walk(b0, path);
  const auto cluster = g_dagger_cluster(b0, path);
  const auto witness = check_sign_coherent(cluster.vectors);

  OrderedJson doc;
  doc["quiver"] = quiver_to_json(state.b_at_node);
  doc["b"] = state.b_at_node.dense();
  doc["path"] = path.steps();
  OrderedJson vectors = OrderedJson::array();
  for (const auto& g : cluster.vectors) vectors.push_back(g.coords());
  doc["g_cluster"] = vectors;

  std::vector<int> signs(b0.size(), 0);
  for (const auto& g : cluster.vectors)
    for (Index i = 0; i < g.size(); ++i)
      if (g[i] != 0 && signs[i] == 0) signs[i] = g[i] > 0 ? 1 : -1;
  doc["sign_coherent"] = !witness.has_value();
  doc["coordinate_signs"] = signs;
  doc["det"] = determinant(cluster.vectors).str();
  return doc;
}

/// In-memory exploration sessions. Each session is a base quiver plus an
/// append-only mutation path; requests on one session are serialized by its
/// own mutex, distinct sessions proceed concurrently.
class SessionService {
 public:
  explicit SessionService(ServiceConfig config = {}) : config_(std::move(config)) {
    if (config_.snapshot_dir) load_snapshots();
  }

  const ServiceConfig& config() const noexcept { return config_; }

  ApiResponse health() const {
    std::shared_lock lock(sessions_mutex_);
    return {200, {{"status", "ok"}, {"sessions", sessions_.size()}}};
  }

  /// Body: a `qlab-quiver-v1` document, {"quiver": doc} or a
  /// `qlab-session-v1` snapshot ({"quiver": doc, "path": [...]}).
  ApiResponse create(const std::string& body) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error&) {
      return error(400, "request body is not valid JSON");
    }
    try {
      const nlohmann::json& quiver_doc =
          doc.is_object() && doc.contains("quiver") ? doc["quiver"] : doc;
      auto session = std::make_shared<Session>(quiver_from_json(quiver_doc));
      if (doc.is_object() && doc.contains("path")) {
        if (!doc["path"].is_array()) return error(400, "\"path\" must be an array of labels");
        for (const auto& s : doc["path"]) {
          if (!s.is_string()) return error(400, "\"path\" must be an array of labels");
          session->base.vertices().index_of(s.get<std::string>());
          session->path = session->path.then(s.get<std::string>());
        }
      }
      std::string id;
      {
        std::unique_lock lock(sessions_mutex_);
        do id = new_id();
        while (!sessions_.emplace(id, session).second);
      }
      std::lock_guard lock(session->mutex);
      persist(id, *session);
      return {201, {{"session_id", id}}};
    } catch (const UnknownVertex& e) {
      return error(400, e.what());
    } catch (const FormatError& e) {
      return error(400, e.what());
    }
  }

  ApiResponse get(const std::string& id) const {
    auto s = find(id);
    if (!s) return unknown_session(id);
    std::lock_guard lock(s->mutex);
    return {200, state(id, *s)};
  }

  /// Body: {"vertex": label}.
  ApiResponse mutate_vertex(const std::string& id, const std::string& body) {
    auto s = find(id);
    if (!s) return unknown_session(id);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error&) {
      return error(400, "request body is not valid JSON");
    }
    if (!doc.is_object() || !doc.contains("vertex") || !doc["vertex"].is_string())
      return error(400, "expected {\"vertex\": label}");
    const std::string label = doc["vertex"].get<std::string>();
    std::lock_guard lock(s->mutex);
    if (!s->base.vertices().contains(label)) return error(400, "unknown vertex '" + label + "'");
    s->path = s->path.then(label);
    persist(id, *s);
    return {200, state(id, *s)};
  }

  /// Pops the last step; a no-op at the base node.
  ApiResponse undo(const std::string& id) {
    auto s = find(id);
    if (!s) return unknown_session(id);
    std::lock_guard lock(s->mutex);
    if (!s->path.empty()) {
      auto steps = s->path.steps();
      steps.pop_back();
      s->path = MutationPath(std::move(steps));
      persist(id, *s);
    }
    return {200, state(id, *s)};
  }

  ApiResponse oracle(const std::string& id, const std::string& label) const {
    auto s = find(id);
    if (!s) return unknown_session(id);
    std::lock_guard lock(s->mutex);
    if (!s->base.vertices().contains(label)) return error(400, "unknown vertex '" + label + "'");
    if (s->base.size() > config_.oracle_max_n)
      return error(422, "oracle limited to quivers with at most " +
                            std::to_string(config_.oracle_max_n) + " vertices");
    try {
      const PrincipalOracle oracle(s->base);
      const LaurentPoly x = oracle.cluster_variable(s->path, label);
      const GVector g = degree(x, oracle.grading());
      const GVector gd = g_dagger_vector(s->base, s->path, label);
      OrderedJson body;
      body["slot"] = label;
      body["path"] = s->path.steps();
      body["polynomial"] = x.to_string();
      body["terms"] = x.term_count();
      body["g"] = g.coords();
      body["g_dagger"] = gd.coords();
      body["agree"] = g == gd;
      return {200, body};
    } catch (const Error& e) {
      return error(500, e.what());
    }
  }

  ApiResponse snapshot(const std::string& id) const {
    auto s = find(id);
    if (!s) return unknown_session(id);
    std::lock_guard lock(s->mutex);
    return {200, snapshot_json(*s)};
  }

 private:
  struct Session {
    explicit Session(SkewMatrix b) : base(std::move(b)) {}
    SkewMatrix base;
    MutationPath path;
    mutable std::mutex mutex;
  };

  static ApiResponse error(int status, const std::string& message) {
    return {status, {{"error", message}}};
  }

  static ApiResponse unknown_session(const std::string& id) {
    return error(404, "unknown session '" + id + "'");
  }

  std::shared_ptr<Session> find(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  static OrderedJson state(const std::string& id, const Session& s) {
    OrderedJson doc;
    doc["session_id"] = id;
    doc["base"] = quiver_to_json(s.base);
    doc["vertices"] = s.base.vertices().labels();
    const auto node = node_state_json(s.base, s.path);
    for (const auto& [k, v] : node.items()) doc[k] = v;
    return doc;
  }

  static OrderedJson snapshot_json(const Session& s) {
    return {{"format", kSessionFormat}, {"quiver", quiver_to_json(s.base)},
            {"path", s.path.steps()}};
  }

  std::string new_id() {
    std::lock_guard lock(id_mutex_);
    std::ostringstream os;
    os << std::hex << rng_();
    return os.str();
  }

  void persist(const std::string& id, const Session& s) const {
    if (!config_.snapshot_dir) return;
    std::filesystem::create_directories(*config_.snapshot_dir);
    std::ofstream out(*config_.snapshot_dir / (id + ".json"), std::ios::trunc);
    out << snapshot_json(s).dump() << '\n';
  }

  void load_snapshots() {
    const auto& dir = *config_.snapshot_dir;
    if (!std::filesystem::is_directory(dir)) return;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.path().extension() != ".json") continue;
      std::ifstream in(entry.path());
      std::stringstream buffer;
      buffer << in.rdbuf();
      try {
        const auto doc = nlohmann::json::parse(buffer.str());
        auto session = std::make_shared<Session>(quiver_from_json(doc.at("quiver")));
        for (const auto& step : doc.at("path")) {
          session->base.vertices().index_of(step.get<std::string>());
          session->path = session->path.then(step.get<std::string>());
        }
        sessions_.emplace(entry.path().stem().string(), std::move(session));
      } catch (const std::exception&) {
        // Unreadable snapshots are skipped.
      }
    }
  }

  ServiceConfig config_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mutex_;
  std::mt19937_64 rng_{std::random_device{}()};
};

}  // namespace qlab
