#ifndef TUTORSYNTH_HTTP_SERVICE_H_
#define TUTORSYNTH_HTTP_SERVICE_H_

#include <memory>
#include <string>

#include "tutorsynth/service.h"

namespace tutorsynth {

// Binds TutorialService to HTTP routes:
//   GET  /tutorials                 GET  /tutorials/{id}
//   GET  /assets/{id}/{path}        POST /sessions
//   POST /sessions/{id}/act         GET  /sessions/{id}
//   POST /snapshots
class HttpServer {
 public:
  explicit HttpServer(TutorialService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Returns the bound port (an ephemeral one when `port` is 0), or -1.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tutorsynth

#endif  // TUTORSYNTH_HTTP_SERVICE_H_
