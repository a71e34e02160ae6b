#ifndef DPGAME_HTTP_SERVER_H_
#define DPGAME_HTTP_SERVER_H_

#include <string>

namespace httplib {
class Server;
}

namespace dpgame {

class SessionStore;

// Routes:
//   POST /sessions                    create (body: session config)
//   GET  /sessions/{id}?since=seq     view + events with seq >= since
//   POST /sessions/{id}/commands      PlaceToken | RequestAiMove | Resign
//   GET  /sessions/{id}/report        game report
//   GET  /sessions/{id}/hint          greedy suggestion for the seat to move
//   GET  /catalog                     tokens, matchups, psychological factors
// Errors come back as {"error": message} with 400 (bad request or illegal
// move), 404 (unknown session), 409 (out of turn, finished session).
void RegisterRoutes(httplib::Server& server, SessionStore& store);

// Blocks serving on host:port until the process is stopped.
int Serve(const std::string& host, int port, const std::string& data_dir);

}  // namespace dpgame

#endif  // DPGAME_HTTP_SERVER_H_
