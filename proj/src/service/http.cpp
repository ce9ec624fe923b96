#include <httplib.h>

#include <iostream>

#include "sml/service/service.h"

namespace sml::service {

void Service::bind(httplib::Server& server) {
  // Method handlers rather than a pre-routing hook, which runs before the body is read.
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    Request r;
    r.method = req.method;
    r.path = req.target.substr(0, req.target.find('?'));
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    r.body = req.body;
    auto out = handle(r);
    res.status = out.status;
    for (const auto& [k, v] : out.headers) res.set_header(k, v);
    if (!out.content_type.empty()) res.set_content(out.body, out.content_type);
  };
  const std::string any = ".*";
  server.Get(any, handler);
  server.Post(any, handler);
  server.Put(any, handler);
  server.Patch(any, handler);
  server.Delete(any, handler);
  server.Options(any, handler);
}

int serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  service.bind(server);
  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "code: IO_ERROR\ncannot listen on " << host << ":" << port << "\n";
    return 2;
  }
  return 0;
}

}  // namespace sml::service
