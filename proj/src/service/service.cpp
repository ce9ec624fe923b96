#include "sml/service/service.h"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sml/rdf/syntax.h"
#include "sml/sparql/query.h"

namespace sml::service {

namespace {

using json = nlohmann::ordered_json;

Response json_response(int status, const json& body) { return {status, body.dump(), "application/json", {}}; }

Response error_response(int status, ErrorCode code, const std::string& message) {
  return json_response(status, {{"code", std::string(to_string(code))}, {"message", message}});
}

Response spec_error_response(const dataspec::SpecError& e) {
  json body{{"code", std::string(to_string(e.code()))}, {"column", e.column()}};
  body["step"] = e.step() ? json(*e.step()) : json(nullptr);
  body["message"] = e.what();
  return json_response(422, body);
}

Response not_found(const std::string& what) { return error_response(404, ErrorCode::NOT_FOUND, what); }

std::string now_iso() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      unsigned v = 0;
      auto [p, ec] = std::from_chars(s.data() + i + 1, s.data() + i + 3, v, 16);
      if (ec == std::errc() && p == s.data() + i + 3) {
        out += static_cast<char>(v);
        i += 2;
        continue;
      }
    }
    out += s[i];
  }
  return out;
}

std::vector<std::string> segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    if (end > start) out.push_back(percent_decode(path.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

json optional_literal(const std::optional<rdf::Literal>& l) { return l ? json(l->lexical) : json(nullptr); }

json column_json(const dataspec::Column& c) {
  json j{{"name", c.name},
         {"kind", std::string(catalog::to_string(c.kind))},
         {"mappedProperty", c.property.value},
         {"mappedDomainClass", c.domain_class.value},
         {"sourceStep", c.source_step},
         {"dataset", c.dataset.value}};
  if (c.axis != catalog::GeoAxis::NONE) j["geoAxis"] = std::string(catalog::to_string(c.axis));
  if (c.attribute) j["attribute"] = c.attribute->value;
  if (c.extractor) {
    j["extractor"] = std::string(catalog::to_string(*c.extractor));
    j["derivedFrom"] = c.derived_from;
  }
  return j;
}

json schema_json(const dataspec::ResultSchema& s) {
  json cols = json::array();
  for (const auto& c : s.columns) cols.push_back(column_json(c));
  return cols;
}

json diagnostics_json(const std::vector<Diagnostic>& ds) {
  json out = json::array();
  for (const auto& d : ds) {
    static constexpr const char* names[] = {"info", "warning", "error"};
    out.push_back({{"severity", names[static_cast<int>(d.severity)]}, {"message", d.message}, {"subject", d.subject}});
  }
  return out;
}

json session_json(const Session& s) {
  json steps = json::array();
  for (const auto& step : s.spec.steps) steps.push_back(json::parse(dataspec::save_step(step)));
  return {{"id", s.id},
          {"revision", s.revision},
          {"createdAt", s.created_at},
          {"updatedAt", s.updated_at},
          {"steps", steps},
          {"schema", schema_json(s.schema)}};
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorCode::IO_ERROR, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

std::string_view to_string(JobStatus s) {
  switch (s) {
    case JobStatus::QUEUED: return "queued";
    case JobStatus::RUNNING: return "running";
    case JobStatus::DONE: return "done";
    case JobStatus::FAILED: break;
  }
  return "failed";
}

Service::Service(rdf::Graph catalog_graph, catalog::DomainModel dm, Config config, source::SourceFactory sources)
    : graph_(std::move(catalog_graph)),
      catalog_(catalog::load_catalog(graph_).catalog),
      dm_(std::move(dm)),
      digest_(catalog::graph_digest(graph_)),
      config_(std::move(config)),
      sources_(sources ? std::move(sources) : source::file_sources(config_.data_root)) {
  restore();
  std::size_t k = std::max<std::size_t>(1, config_.workers);
  for (std::size_t i = 0; i < k; ++i) workers_.emplace_back([this] { work(); });
}

Service::~Service() {
  {
    std::lock_guard lock(jobs_mutex_);
    stopping_ = true;
  }
  jobs_cv_.notify_all();
  for (auto& t : workers_) t.join();
}

Response Service::handle(const Request& req) {
  Response res;
  if (req.method == "OPTIONS") {
    res.status = 204;
    res.content_type.clear();
    res.headers["Access-Control-Allow-Methods"] = "GET, POST, DELETE, OPTIONS";
    res.headers["Access-Control-Allow-Headers"] = "Content-Type";
    res.headers["Access-Control-Max-Age"] = "600";
  } else {
    try {
      res = route(req);
    } catch (const dataspec::SpecError& e) {
      res = spec_error_response(e);
    } catch (const Error& e) {
      res = error_response(500, e.code(), e.what());
    } catch (const std::exception& e) {
      res = error_response(500, ErrorCode::IO_ERROR, e.what());
    }
  }
  if (!config_.cors_origin.empty()) res.headers["Access-Control-Allow-Origin"] = config_.cors_origin;
  return res;
}

Response Service::route(const Request& req) {
  auto seg = segments(req.path);
  const auto& m = req.method;
  auto n = seg.size();
  auto wrong_method = [&] { return error_response(405, ErrorCode::USAGE, m + " is not allowed on " + req.path); };
  if (n >= 2 && seg[0] == "catalog") {
    if (m != "GET") return wrong_method();
    if (n == 2 && seg[1] == "datasets") return datasets();
    if (n == 4 && seg[1] == "datasets" && seg[3] == "attributes") return attributes(seg[2]);
    if (n == 2 && seg[1] == "validate") return validation();
  } else if (n == 1 && seg[0] == "query") {
    if (m != "POST") return wrong_method();
    return query(req.body);
  } else if (n >= 1 && seg[0] == "specs") {
    if (n == 1) {
      if (m != "POST") return wrong_method();
      return create({}, {});
    }
    if (n == 2 && seg[1] == "import") {
      if (m != "POST") return wrong_method();
      return import(req.body);
    }
    const auto& id = seg[1];
    if (n == 2) return m == "GET" ? session_view(id) : wrong_method();
    if (n == 3 && seg[2] == "steps") return m == "POST" ? add_step(id, req) : wrong_method();
    if (n == 4 && seg[2] == "steps" && seg[3] == "last") return m == "DELETE" ? undo(id, req) : wrong_method();
    if (n == 3 && seg[2] == "suggestions") return m == "GET" ? suggestions(id) : wrong_method();
    if (n == 3 && seg[2] == "schema") return m == "GET" ? schema(id) : wrong_method();
    if (n == 3 && seg[2] == "export") return m == "GET" ? export_spec(id) : wrong_method();
    if (n == 3 && seg[2] == "materialize") return m == "POST" ? start_job(id) : wrong_method();
  } else if (n >= 2 && seg[0] == "jobs") {
    if (m != "GET") return wrong_method();
    if (n == 2) return job_view(seg[1]);
    if (n == 3 && seg[2] == "result") return job_result(seg[1], req);
    if (n == 3 && seg[2] == "download") return job_download(seg[1]);
  }
  return not_found("no endpoint " + req.method + " " + req.path);
}

Response Service::datasets() const {
  json out = json::array();
  for (const auto& d : catalog_.datasets) {
    json t = nullptr;
    if (d.temporal) t = {{"start", optional_literal(d.temporal->start)}, {"end", optional_literal(d.temporal->end)}};
    out.push_back({{"iri", d.iri.value},
                   {"shortName", d.short_name},
                   {"title", d.title},
                   {"temporal", t},
                   {"attributes", d.attributes.size()}});
  }
  return json_response(200, out);
}

Response Service::attributes(const std::string& ref) const {
  const auto* d = catalog_.find_dataset(ref, graph_.prefixes());
  if (!d) return error_response(404, ErrorCode::UNKNOWN_DATASET, "unknown dataset " + ref);
  json out = json::array();
  for (const auto& a : d->attributes) {
    json j{{"iri", a.iri.value}, {"identifier", a.identifier}};
    j["columnNumber"] = a.column_number ? json(*a.column_number) : json(nullptr);
    j["columnName"] = a.column_name ? json(*a.column_name) : json(nullptr);
    auto mapping = a.mapping();
    j["mapping"] = mapping ? json{{"property", mapping->property.value}, {"domainClass", mapping->domain_class.value}}
                           : json(nullptr);
    json stats = json::object();
    const auto& s = a.statistics;
    if (s.count) stats["numberOfInstances"] = *s.count;
    if (s.null_count) stats["numberOfNullValues"] = *s.null_count;
    if (s.distinct_count) stats["numberOfDistinctValues"] = *s.distinct_count;
    if (s.mean) stats["meanValue"] = s.mean->lexical;
    if (s.min) stats["minValue"] = s.min->lexical;
    if (s.max) stats["maxValue"] = s.max->lexical;
    j["statistics"] = stats;
    out.push_back(std::move(j));
  }
  return json_response(200, out);
}

Response Service::validation() const {
  json out = json::array();
  for (const auto& v : catalog::validate(catalog_, dm_)) {
    out.push_back({{"kind", std::string(catalog::to_string(v.kind))}, {"subject", v.subject}, {"message", v.message}});
  }
  return json_response(200, {{"violations", out}});
}

Response Service::query(const std::string& body) const {
  auto prefixes = rdf::standard_prefixes();
  for (const auto& [k, v] : graph_.prefixes()) prefixes[k] = v;
  sparql::Query q;
  try {
    q = sparql::parse_query(body, prefixes);
  } catch (const Error& e) {
    return error_response(400, e.code(), e.what());
  }
  json rows = json::array();
  for (const auto& s : sparql::evaluate(q, graph_)) {
    json row = json::array();
    for (const auto& v : q.projection) {
      auto it = s.find(v);
      row.push_back(it == s.end() ? json(nullptr) : json(rdf::to_ntriples(it->second)));
    }
    rows.push_back(std::move(row));
  }
  return json_response(200, {{"variables", q.projection}, {"rows", rows}});
}

Response Service::create(dataspec::Specification spec, std::vector<Diagnostic> diagnostics) {
  std::lock_guard lock(mutex_);
  Session s;
  s.id = "spec-" + std::to_string(next_session_++);
  spec.id = s.id;
  if (!catalog_.catalogs.empty()) spec.catalog_iri = catalog_.catalogs.front().value;
  spec.catalog_digest = digest_;
  s.schema = dataspec::infer_schema(spec, catalog_, dm_);
  s.spec = std::move(spec);
  s.created_at = s.updated_at = now_iso();
  persist(s);
  auto body = session_json(s);
  body["diagnostics"] = diagnostics_json(diagnostics);
  auto key = s.id;
  sessions_.emplace(key, std::move(s));
  return json_response(201, body);
}

Response Service::import(const std::string& body) {
  dataspec::LoadedSpec loaded;
  try {
    loaded = dataspec::load_spec(body, catalog_, dm_, digest_);
  } catch (const Error& e) {
    return error_response(400, e.code(), e.what());
  }
  if (loaded.error) return spec_error_response(*loaded.error);
  return create(std::move(loaded.spec), std::move(loaded.diagnostics));
}

Response Service::session_view(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return not_found("unknown spec " + id);
  return json_response(200, session_json(it->second));
}

Response Service::add_step(const std::string& id, const Request& req) {
  json body;
  try {
    body = json::parse(req.body);
  } catch (const json::parse_error& e) {
    return error_response(400, ErrorCode::MALFORMED_DOCUMENT, std::string("request body is not JSON: ") + e.what());
  }
  if (!body.is_object()) return error_response(400, ErrorCode::MALFORMED_DOCUMENT, "request body must be an object");
  std::optional<std::uint64_t> revision;
  if (body.contains("revision")) {
    if (!body["revision"].is_number_unsigned()) {
      return error_response(400, ErrorCode::MALFORMED_DOCUMENT, "revision must be a non-negative integer");
    }
    revision = body["revision"].get<std::uint64_t>();
  }
  dataspec::Step step;
  try {
    step = dataspec::parse_step(body.contains("step") ? body["step"].dump() : body.dump());
  } catch (const Error& e) {
    return error_response(400, e.code(), e.what());
  }
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return not_found("unknown spec " + id);
  auto& s = it->second;
  if (revision && *revision != s.revision) {
    return error_response(409, ErrorCode::REVISION_CONFLICT,
                          "revision " + std::to_string(*revision) + " is stale; current is " +
                              std::to_string(s.revision));
  }
  dataspec::StepResult result;
  try {
    result = dataspec::add_step(s.spec, step, catalog_, dm_);
  } catch (const dataspec::SpecError& e) {
    return spec_error_response(e);
  }
  Session next = s;
  next.spec = std::move(result.spec);
  next.schema = std::move(result.schema);
  ++next.revision;
  next.updated_at = now_iso();
  persist(next);
  s = std::move(next);
  return json_response(200, session_json(s));
}

Response Service::undo(const std::string& id, const Request& req) {
  std::optional<std::uint64_t> revision;
  if (auto q = req.query.find("revision"); q != req.query.end()) {
    revision = parse_uint(q->second);
    if (!revision) return error_response(400, ErrorCode::USAGE, "revision must be a non-negative integer");
  }
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return not_found("unknown spec " + id);
  auto& s = it->second;
  if (revision && *revision != s.revision) {
    return error_response(409, ErrorCode::REVISION_CONFLICT,
                          "revision " + std::to_string(*revision) + " is stale; current is " +
                              std::to_string(s.revision));
  }
  if (s.spec.steps.empty()) return error_response(422, ErrorCode::INVALID_PARAMETER, "spec has no step to undo");
  Session next = s;
  next.spec.steps.pop_back();
  next.schema = dataspec::infer_schema(next.spec, catalog_, dm_);
  ++next.revision;
  next.updated_at = now_iso();
  persist(next);
  s = std::move(next);
  return json_response(200, session_json(s));
}

Response Service::suggestions(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return not_found("unknown spec " + id);
  json out = json::array();
  for (const auto& sug : dataspec::suggest_steps(dataspec::infer_state(it->second.spec, catalog_, dm_))) {
    out.push_back({{"step", json::parse(dataspec::save_step(sug.step))}, {"reason", sug.reason}});
  }
  return json_response(200, {{"revision", it->second.revision}, {"suggestions", out}});
}

Response Service::schema(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return not_found("unknown spec " + id);
  auto schema = dataspec::infer_schema(it->second.spec, catalog_, dm_);
  return json_response(200, {{"revision", it->second.revision}, {"columns", schema_json(schema)}});
}

Response Service::export_spec(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return not_found("unknown spec " + id);
  return {200, dataspec::save_spec(it->second.spec), "application/json", {}};
}

Response Service::start_job(const std::string& id) {
  dataspec::Specification spec;
  {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return not_found("unknown spec " + id);
    spec = it->second.spec;
  }
  if (spec.steps.empty()) return error_response(409, ErrorCode::INVALID_SPEC, "spec has no steps");
  try {
    dataspec::infer_schema(spec, catalog_, dm_);
  } catch (const dataspec::SpecError& e) {
    return error_response(409, ErrorCode::INVALID_SPEC, e.what());
  }
  auto job = std::make_shared<Job>();
  job->session = id;
  job->spec = std::move(spec);
  {
    std::lock_guard lock(jobs_mutex_);
    job->id = "job-" + std::to_string(next_job_++);
    jobs_[job->id] = job;
    queue_.push_back(job);
  }
  jobs_cv_.notify_one();
  return json_response(202, {{"job", job->id}, {"status", "queued"}});
}

Response Service::job_view(const std::string& id) {
  std::lock_guard lock(jobs_mutex_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return not_found("unknown job " + id);
  const auto& j = *it->second;
  json out{{"id", j.id}, {"spec", j.session}, {"status", std::string(to_string(j.status))}};
  if (j.table) {
    out["rows"] = j.table->rows.size();
    out["unmatchedPoints"] = j.table->unmatched_points;
    out["diagnostics"] = diagnostics_json(j.table->diagnostics);
  }
  if (j.status == JobStatus::FAILED) out["error"] = {{"code", std::string(to_string(j.error_code))}, {"message", j.error}};
  return json_response(200, out);
}

Response Service::job_result(const std::string& id, const Request& req) {
  std::size_t limit = 100;
  if (auto q = req.query.find("limit"); q != req.query.end()) {
    auto v = parse_uint(q->second);
    if (!v) return error_response(400, ErrorCode::USAGE, "limit must be a non-negative integer");
    limit = static_cast<std::size_t>(*v);
  }
  std::shared_ptr<Job> job;
  {
    std::lock_guard lock(jobs_mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return not_found("unknown job " + id);
    job = it->second;
    if (job->status == JobStatus::FAILED) return error_response(409, job->error_code, job->error);
    if (job->status != JobStatus::DONE) return error_response(409, ErrorCode::JOB_NOT_READY, "job is " + std::string(to_string(job->status)));
  }
  const auto& t = *job->table;
  json rows = json::array();
  for (std::size_t i = 0; i < t.rows.size() && i < limit; ++i) {
    json row = json::array();
    for (const auto& c : t.rows[i]) row.push_back(c.null() ? json(nullptr) : json(c.text));
    rows.push_back(std::move(row));
  }
  return json_response(200, {{"schema", schema_json(t.schema)}, {"rows", rows}, {"totalRows", t.rows.size()}});
}

Response Service::job_download(const std::string& id) {
  std::lock_guard lock(jobs_mutex_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return not_found("unknown job " + id);
  const auto& job = *it->second;
  if (job.status == JobStatus::FAILED) return error_response(409, job.error_code, job.error);
  if (job.status != JobStatus::DONE) return error_response(409, ErrorCode::JOB_NOT_READY, "job is " + std::string(to_string(job.status)));
  Response r{200, job.csv, "text/csv", {}};
  r.headers["Content-Disposition"] = "attachment; filename=\"" + job.id + ".csv\"";
  return r;
}

void Service::persist(const Session& s) const {
  if (config_.state_dir.empty()) return;
  std::filesystem::create_directories(config_.state_dir);
  write_atomically(config_.state_dir / (s.id + ".json"), dataspec::save_spec(s.spec));
  json meta{{"revision", s.revision}, {"createdAt", s.created_at}, {"updatedAt", s.updated_at}};
  write_atomically(config_.state_dir / (s.id + ".session"), meta.dump() + "\n");
}

void Service::restore() {
  if (config_.state_dir.empty() || !std::filesystem::is_directory(config_.state_dir)) return;
  for (const auto& entry : std::filesystem::directory_iterator(config_.state_dir)) {
    const auto& path = entry.path();
    if (path.extension() != ".json") continue;
    std::string id = path.stem().string();
    try {
      auto loaded = dataspec::load_spec(read_text(path), catalog_, dm_, digest_);
      for (const auto& d : loaded.diagnostics) std::cerr << id << ": " << format(d) << "\n";
      if (!loaded.state) continue;
      Session s;
      s.id = id;
      s.spec = std::move(loaded.spec);
      s.spec.id = id;
      s.schema = loaded.state->result();
      auto meta_path = config_.state_dir / (id + ".session");
      if (std::filesystem::exists(meta_path)) {
        auto meta = json::parse(read_text(meta_path));
        s.revision = meta.value("revision", std::uint64_t{0});
        s.created_at = meta.value("createdAt", std::string());
        s.updated_at = meta.value("updatedAt", std::string());
      }
      if (id.starts_with("spec-")) {
        if (auto n = parse_uint(std::string_view(id).substr(5))) next_session_ = std::max(next_session_, *n + 1);
      }
      sessions_.emplace(id, std::move(s));
    } catch (const std::exception& e) {
      std::cerr << id << ": not restored: " << e.what() << "\n";
    }
  }
}

void Service::work() {
  while (true) {
    std::shared_ptr<Job> job;
    {
      std::unique_lock lock(jobs_mutex_);
      jobs_cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      job = queue_.front();
      queue_.pop_front();
      job->status = JobStatus::RUNNING;
      ++running_;
      max_running_ = std::max(max_running_, running_);
    }
    std::optional<materializer::Table> table;
    std::string csv;
    ErrorCode code = ErrorCode::IO_ERROR;
    std::string error;
    try {
      table = materializer::materialize(job->spec, catalog_, dm_, sources_);
      csv = materializer::write_csv(*table);
    } catch (const Error& e) {
      code = e.code();
      error = e.what();
    } catch (const std::exception& e) {
      error = e.what();
    }
    {
      std::lock_guard lock(jobs_mutex_);
      if (table) {
        job->table = std::move(table);
        job->csv = std::move(csv);
        job->status = JobStatus::DONE;
      } else {
        job->status = JobStatus::FAILED;
        job->error_code = code;
        job->error = std::move(error);
      }
      --running_;
    }
    idle_cv_.notify_all();
  }
}

void Service::wait_idle() {
  std::unique_lock lock(jobs_mutex_);
  idle_cv_.wait(lock, [&] { return queue_.empty() && running_ == 0; });
}

std::size_t Service::max_running_observed() const {
  std::lock_guard lock(jobs_mutex_);
  return max_running_;
}

}  // namespace sml::service
