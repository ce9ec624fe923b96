#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sml/dataspec/dataspec.h"
#include "sml/materializer/materializer.h"
#include "sml/source/row_source.h"

namespace httplib {
class Server;
}

namespace sml::service {

struct Config {
  std::filesystem::path state_dir;  // empty: sessions live in memory only
  std::filesystem::path data_root;
  std::size_t workers = 2;  // concurrent materialization jobs
  std::string cors_origin = "*";
};

struct Request {
  std::string method;
  std::string path;  // percent-encoded, without the query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
  std::map<std::string, std::string> headers;
};

// Every mutation revalidates the whole spec; a rejected mutation leaves the
// stored spec unchanged.
struct Session {
  std::string id;
  dataspec::Specification spec;
  dataspec::ResultSchema schema;
  std::uint64_t revision = 0;
  std::string created_at;
  std::string updated_at;
};

enum class JobStatus : std::uint8_t { QUEUED, RUNNING, DONE, FAILED };

std::string_view to_string(JobStatus s);

struct Job {
  std::string id;
  std::string session;
  dataspec::Specification spec;
  JobStatus status = JobStatus::QUEUED;
  std::optional<materializer::Table> table;
  std::string csv;
  ErrorCode error_code = ErrorCode::IO_ERROR;
  std::string error;
};

class Service {
 public:
  // `sources` defaults to CSV files under config.data_root.
  Service(rdf::Graph catalog_graph, catalog::DomainModel dm, Config config,
          source::SourceFactory sources = nullptr);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response handle(const Request& req);

  // Routes every request on `server` through handle().
  void bind(httplib::Server& server);

  // Blocks until no job is queued or running.
  void wait_idle();

  std::size_t max_running_observed() const;

 private:
  Response route(const Request& req);
  Response datasets() const;
  Response attributes(const std::string& ref) const;
  Response validation() const;
  Response query(const std::string& body) const;
  Response create(dataspec::Specification spec, std::vector<Diagnostic> diagnostics);
  Response import(const std::string& body);
  Response session_view(const std::string& id);
  Response add_step(const std::string& id, const Request& req);
  Response undo(const std::string& id, const Request& req);
  Response suggestions(const std::string& id);
  Response schema(const std::string& id);
  Response export_spec(const std::string& id);
  Response start_job(const std::string& id);
  Response job_view(const std::string& id);
  Response job_result(const std::string& id, const Request& req);
  Response job_download(const std::string& id);

  void persist(const Session& s) const;
  void restore();
  void work();

  rdf::Graph graph_;
  catalog::Catalog catalog_;
  catalog::DomainModel dm_;
  std::string digest_;
  Config config_;
  source::SourceFactory sources_;

  mutable std::mutex mutex_;
  std::map<std::string, Session> sessions_;
  std::uint64_t next_session_ = 1;

  mutable std::mutex jobs_mutex_;
  std::condition_variable jobs_cv_;
  std::condition_variable idle_cv_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::deque<std::shared_ptr<Job>> queue_;
  std::uint64_t next_job_ = 1;
  std::size_t running_ = 0;
  std::size_t max_running_ = 0;
  bool stopping_ = false;
  std::vector<std::thread> workers_;
};

// Serves until the process is stopped.
int serve(Service& service, const std::string& host, int port);

}  // namespace sml::service
