#include "dpgame/http_server.h"

#include <iostream>

#include <httplib.h>

#include "dpgame/serialization.h"
#include "dpgame/service.h"

namespace dpgame {
namespace {

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Maps engine errors onto HTTP statuses.
template <typename Fn>
void Guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const NotFoundError& e) {
    Reply(res, 404, json{{"error", e.what()}});
  } catch (const ConflictError& e) {
    Reply(res, 409, json{{"error", e.what()}});
  } catch (const StateError& e) {
    Reply(res, 409, json{{"error", e.what()}});
  } catch (const Error& e) {
    Reply(res, 400, json{{"error", e.what()}});
  } catch (const json::exception& e) {
    Reply(res, 400, json{{"error", std::string("malformed JSON: ") + e.what()}});
  } catch (const std::exception& e) {
    Reply(res, 500, json{{"error", e.what()}});
  }
}

json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

void RegisterRoutes(httplib::Server& server, SessionStore& store) {
  server.Post("/sessions", [&store](const httplib::Request& req, httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 201, store.Create(ParseBody(req))); });
  });

  server.Get(R"(/sessions/([0-9a-f]+))",
             [&store](const httplib::Request& req, httplib::Response& res) {
               Guarded(res, [&] {
                 long long since = 0;
                 if (req.has_param("since")) since = std::stoll(req.get_param_value("since"));
                 Reply(res, 200, store.View(req.matches[1], since));
               });
             });

  server.Post(R"(/sessions/([0-9a-f]+)/commands)",
              [&store](const httplib::Request& req, httplib::Response& res) {
                Guarded(res, [&] { Reply(res, 200, store.Command(req.matches[1], ParseBody(req))); });
              });

  server.Get(R"(/sessions/([0-9a-f]+)/report)",
             [&store](const httplib::Request& req, httplib::Response& res) {
               Guarded(res, [&] { Reply(res, 200, store.Report(req.matches[1])); });
             });

  server.Get(R"(/sessions/([0-9a-f]+)/hint)",
             [&store](const httplib::Request& req, httplib::Response& res) {
               Guarded(res, [&] { Reply(res, 200, store.Hint(req.matches[1])); });
             });

  server.Get("/catalog", [](const httplib::Request&, httplib::Response& res) {
    Guarded(res, [&] {
      json j = Catalog::Default().ToJson();
      j["psych_factors"] = PsychFactorsJson();
      Reply(res, 200, j);
    });
  });
}

int Serve(const std::string& host, int port, const std::string& data_dir) {
  SessionStore store(data_dir);
  httplib::Server server;
  RegisterRoutes(server, store);
  std::cerr << "serving on " << host << ":" << port << " (data: " << data_dir << ")\n";
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot listen on " << host << ":" << port << '\n';
    return 1;
  }
  return 0;
}

}  // namespace dpgame
