#pragma once

// JSON-over-HTTP API for live annotation sessions.
//
//   GET  /api/batches                              batch ids and sizes
//   GET  /api/batches/{id}/next?annotator=A        earliest undecided record for A
//   GET  /api/batches/{id}/progress[?annotator=A]  decided / total
//   POST /api/decisions                            one decision (sheet column names + batch, annotator)
//   GET  /api/export/{id}?annotator=A              the filled sheet as CSV
//
// Errors are {"error": "...", "fields": [...]} with 400 for malformed input
// and 404 for unknown batches or records.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "psylex/error.hpp"
#include "psylex/service/session_store.hpp"

namespace psylex::service {

inline void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response& res, int status, std::string message,
                       std::vector<std::string> fields = {}, std::vector<std::string> problems = {}) {
  nlohmann::json body{{"error", std::move(message)}, {"fields", std::move(fields)}};
  if (!problems.empty()) body["problems"] = std::move(problems);
  send_json(res, status, body);
}

/// Runs `fn`, mapping library errors onto HTTP statuses.
template <class F>
void guarded(httplib::Response& res, F&& fn) {
  try {
    fn();
  } catch (const PayloadError& e) {
    send_error(res, 400, e.what(), e.fields(), e.problems());
  } catch (const UnknownRecordError& e) {
    send_error(res, 404, e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

inline std::string required_annotator(const httplib::Request& req) {
  const auto a = req.get_param_value("annotator");
  if (a.empty()) throw PayloadError({"annotator"}, {"annotator: query parameter required"});
  return a;
}

/// Registers the API routes on `server`. The store must outlive it.
inline void install_api(httplib::Server& server, SessionStore& store) {
  server.Get("/api/batches", [&store](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      auto list = nlohmann::json::array();
      for (const auto& id : store.batch_ids()) list.push_back({{"id", id}, {"size", store.sheet(id).size()}});
      send_json(res, 200, {{"batches", list}});
    });
  });

  server.Get(R"(/api/batches/([^/]+)/next)", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string batch = req.matches[1];
      const auto annotator = required_annotator(req);
      const auto p = store.progress(batch, annotator);
      nlohmann::json body{{"batch", batch}, {"annotator", annotator}, {"decided", p.decided}, {"total", p.total}};
      if (const auto i = store.next_index(batch, annotator)) {
        const auto& row = store.sheet(batch).rows[*i];
        body["done"] = false;
        body["position"] = *i;
        body["record"] = {{"id", row.id}, {"category", row.category}, {"source", row.source},
                          {"candidate", row.candidate}};
      } else {
        body["done"] = true;
        body["record"] = nullptr;
      }
      send_json(res, 200, body);
    });
  });

  server.Get(R"(/api/batches/([^/]+)/progress)", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string batch = req.matches[1];
      nlohmann::json per = nlohmann::json::object();
      for (const auto& a : store.annotators(batch)) per[a] = store.progress(batch, a).decided;
      nlohmann::json body{{"batch", batch}, {"total", store.sheet(batch).size()}, {"annotators", per}};
      if (req.has_param("annotator")) {
        const auto annotator = required_annotator(req);
        body["annotator"] = annotator;
        body["decided"] = store.progress(batch, annotator).decided;
      }
      send_json(res, 200, body);
    });
  });

  server.Post("/api/decisions", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(req.body);
      } catch (const nlohmann::json::exception& e) {
        throw PayloadError({}, {std::string("body is not valid JSON: ") + e.what()});
      }
      const auto p = decision_from_json(j);
      store.record(p);
      const auto progress = store.progress(p.batch, p.decision.annotator);
      send_json(res, 201, {{"ok", true}, {"batch", p.batch}, {"id", p.decision.record_id},
                           {"decided", progress.decided}, {"total", progress.total}});
    });
  });

  // Without ?annotator= the export is unambiguous only when at most one
  // annotator has worked on the batch.
  server.Get(R"(/api/export/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string batch = req.matches[1];
      std::string annotator;
      if (req.has_param("annotator")) {
        annotator = required_annotator(req);
      } else {
        const auto who = store.annotators(batch);
        if (who.size() > 1)
          throw PayloadError({"annotator"}, {"annotator: required, batch has decisions from several annotators"});
        if (!who.empty()) annotator = who.front();
      }
      res.status = 200;
      res.set_header("Content-Disposition", "attachment; filename=\"" + batch + ".csv\"");
      res.set_content(store.export_sheet(batch, annotator), "text/csv; charset=utf-8");
    });
  });
}

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  /// Needed for any host other than a loopback address.
  bool bind_external = false;
  /// Built annotation UI, served at / when set.
  std::filesystem::path static_dir;
};

inline bool is_loopback(std::string_view host) {
  return host == "127.0.0.1" || host == "localhost" || host == "::1" || host.starts_with("127.");
}

/// Throws ConfigError when the options would expose the service off-host
/// without --bind-external.
inline void check_bind(const ServeOptions& o) {
  std::vector<std::string> problems;
  if (!is_loopback(o.host) && !o.bind_external)
    problems.push_back("host '" + o.host + "' is not a loopback address; pass --bind-external to allow it");
  if (o.port < 0 || o.port > 65535) problems.push_back("port " + std::to_string(o.port) + " is out of range");
  if (!o.static_dir.empty() && !std::filesystem::is_directory(o.static_dir))
    problems.push_back("static directory " + o.static_dir.string() + " does not exist");
  if (!problems.empty()) throw ConfigError(problems);
}

inline void configure_server(httplib::Server& server, SessionStore& store, const ServeOptions& o) {
  check_bind(o);
  install_api(server, store);
  if (!o.static_dir.empty()) server.set_mount_point("/", o.static_dir.string());
}

}  // namespace psylex::service
