#pragma once

// HTTP JSON API over a session store.
//
//   POST /sessions                      body: any data document or saved session
//   GET  /sessions/{id}                 saved session document
//   GET  /sessions/{id}/report
//   GET  /sessions/{id}/ladder?level=ℓ
//   POST /sessions/{id}/refinements     {"x", "y", "value"}
//   GET  /sessions/{id}/suggestion
//   POST /sessions/{id}/bookmarks       {"name", "level"}
//
// Every response body is JSON carrying "schema". Errors come back as
// {"schema", "error": {"type", "message", ...}}.

#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include <httplib.h>

#include "report.hpp"
#include "session.hpp"
#include "store.hpp"

namespace supdeg {

struct Response {
  int status = 200;
  json body;
};

inline Response error_response(const std::exception& e) {
  json err = {{"message", e.what()}};
  int status = 500;
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    status = 400;
    err["type"] = "parse_error";
    if (p->line()) err["line"] = p->line();
    if (p->column()) err["column"] = p->column();
  } else if (const auto* v = dynamic_cast<const InvariantViolation*>(&e)) {
    status = 422;
    err["type"] = "invariant_violation";
    err["invariant"] = v->invariant();
  } else if (dynamic_cast<const DimensionError*>(&e)) {
    status = 422;
    err["type"] = "dimension_error";
  } else if (dynamic_cast<const InvalidArgument*>(&e)) {
    status = 422;
    err["type"] = "invalid_argument";
  } else if (dynamic_cast<const WrongDataKind*>(&e)) {
    status = 409;
    err["type"] = "wrong_data_kind";
  } else if (dynamic_cast<const UnknownSession*>(&e)) {
    status = 404;
    err["type"] = "unknown_session";
  } else {
    err["type"] = "internal";
  }
  return {status, {{"schema", kSchemaVersion}, {"error", std::move(err)}}};
}

/// Request handlers, independent of the transport.
class Service {
 public:
  Response create(std::string_view body, Format format = Format::automatic, std::optional<double> phi_star = {}) {
    return guard([&] {
      const auto id = store_.create([&](std::string fresh) {
        auto s = load_session(body, format, fresh, phi_star);
        // a resumed session keeps its history but gets a store-unique id
        return s.id() == fresh ? s : Session::from_json(with_id(s.to_json(), fresh));
      });
      return store_.read(id, [&](const Session& s) {
        return Response{201, {{"schema", kSchemaVersion}, {"id", id}, {"kind", kind_name(s.kind())}}};
      });
    });
  }

  Response session(const std::string& id) const {
    return guard([&] { return store_.read(id, [](const Session& s) { return Response{200, s.to_json()}; }); });
  }

  Response report(const std::string& id) const {
    return guard([&] {
      return store_.read(id, [&](const Session& s) {
        auto r = analyze(s);
        r["id"] = id;
        return Response{200, std::move(r)};
      });
    });
  }

  Response ladder(const std::string& id, std::optional<std::string> level = {}) const {
    return guard([&] {
      std::optional<double> value;
      if (level) value = parse_level(*level);
      return store_.read(id, [&](const Session& s) { return Response{200, ladder_report(s, value)}; });
    });
  }

  Response refine(const std::string& id, std::string_view body) {
    return guard([&] {
      const auto j = parse_json(body);
      const auto x = detail::get_as<std::string>(detail::member(j, "x"), "x");
      const auto y = detail::get_as<std::string>(detail::member(j, "y"), "y");
      const auto value = detail::real_of(detail::member(j, "value"), "value");
      return store_.write(id, [&](Session& s) {
        s.refine(x, y, value);
        auto r = analyze(s);
        r["id"] = id;
        return Response{200, std::move(r)};
      });
    });
  }

  Response suggestion(const std::string& id) const {
    return guard([&] {
      return store_.read(id, [](const Session& s) {
        auto r = suggestion_json(s);
        r["schema"] = kSchemaVersion;
        return Response{200, std::move(r)};
      });
    });
  }

  Response bookmark(const std::string& id, std::string_view body) {
    return guard([&] {
      const auto j = parse_json(body);
      const auto name = detail::get_as<std::string>(detail::member(j, "name"), "name");
      const auto level = detail::real_of(detail::member(j, "level"), "level");
      return store_.write(id, [&](Session& s) {
        s.bookmark(name, level);
        auto r = analyze(s);
        return Response{201, {{"schema", kSchemaVersion}, {"id", id}, {"bookmarks", r["bookmarks"]}}};
      });
    });
  }

  SessionStore& store() noexcept { return store_; }

 private:
  template <typename F>
  static Response guard(F&& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      return error_response(e);
    }
  }

  static json with_id(json j, const std::string& id) {
    j["id"] = id;
    return j;
  }

  static double parse_level(const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) throw ParseError("level '" + text + "' is not a number");
    return quantize(v);
  }

  SessionStore store_;
};

/// Registers the API routes on `server`. When `static_dir` is set its files
/// are served under /.
inline void mount(httplib::Server& server, Service& service, const std::string& static_dir = {}) {
  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto optional_param = [](const httplib::Request& req, const char* key) -> std::optional<std::string> {
    if (!req.has_param(key)) return std::nullopt;
    return req.get_param_value(key);
  };

  server.Post("/sessions", [&service, send, optional_param](const httplib::Request& req, httplib::Response& res) {
    try {
      Format format = Format::automatic;
      std::optional<double> phi_star;
      if (auto f = optional_param(req, "format")) format = parse_format_name(*f);
      if (auto p = optional_param(req, "phi_star")) {
        phi_star = detail::parse_real(*p);
        if (!phi_star) throw ParseError("phi_star '" + *p + "' is not a number");
      }
      send(res, service.create(req.body, format, phi_star));
    } catch (const std::exception& e) {
      send(res, error_response(e));
    }
  });
  server.Get(R"(/sessions/([0-9a-f]+))", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.session(req.matches[1]));
  });
  server.Get(R"(/sessions/([0-9a-f]+)/report)", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.report(req.matches[1]));
  });
  server.Get(R"(/sessions/([0-9a-f]+)/ladder)",
             [&service, send, optional_param](const httplib::Request& req, httplib::Response& res) {
               send(res, service.ladder(req.matches[1], optional_param(req, "level")));
             });
  server.Post(R"(/sessions/([0-9a-f]+)/refinements)",
              [&service, send](const httplib::Request& req, httplib::Response& res) {
                send(res, service.refine(req.matches[1], req.body));
              });
  server.Get(R"(/sessions/([0-9a-f]+)/suggestion)",
             [&service, send](const httplib::Request& req, httplib::Response& res) {
               send(res, service.suggestion(req.matches[1]));
             });
  server.Post(R"(/sessions/([0-9a-f]+)/bookmarks)",
              [&service, send](const httplib::Request& req, httplib::Response& res) {
                send(res, service.bookmark(req.matches[1], req.body));
              });
  if (!static_dir.empty()) server.set_mount_point("/", static_dir);
}

/// Blocks serving the API on host:port until the server is stopped.
inline bool serve(Service& service, const std::string& host, int port, const std::string& static_dir = {}) {
  httplib::Server server;
  mount(server, service, static_dir);
  return server.listen(host, port);
}

}  // namespace supdeg
