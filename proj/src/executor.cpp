#include "lexsparql/executor.hpp"

#include <thread>

#include <httplib.h>

#include "lexsparql/error.hpp"
#include "lexsparql/local_eval.hpp"

namespace lexsparql {

void EndpointLimits::validate() const {
  if (max_rows_per_query < 1) throw Error(ErrorKind::config, "max_rows_per_query must be >= 1");
  if (page_size < 1) throw Error(ErrorKind::config, "page_size must be >= 1");
  if (per_query_timeout.count() <= 0) throw Error(ErrorKind::config, "timeout must be > 0");
  if (min_request_interval.count() < 0)
    throw Error(ErrorKind::config, "min_request_interval must be >= 0");
  if (max_retries < 0) throw Error(ErrorKind::config, "max_retries must be >= 0");
}

void RateLimiter::acquire() {
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mu_);
    auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
}

ResultSet LocalExecutor::execute(std::string_view query) {
  return execute_local(*snapshot_, query);
}

namespace {

struct HttpFailure {
  ErrorKind kind;
  std::string message;
  bool retryable;
};

std::pair<std::string, std::string> split_url(const std::string& url) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos)
    throw Error(ErrorKind::config, "endpoint URL lacks a scheme: '" + url + "'");
  auto path = url.find('/', scheme + 3);
  if (path == std::string::npos) return {url, "/"};
  return {url.substr(0, path), url.substr(path)};
}

}  // namespace

RemoteExecutor::RemoteExecutor(EndpointConfig config, EndpointLimits limits,
                               std::shared_ptr<RateLimiter> limiter)
    : config_(std::move(config)), limits_(limits), limiter_(std::move(limiter)) {
  limits_.validate();
  if (config_.user_agent.empty())
    throw Error(ErrorKind::config, "a user-agent string is required");
  std::tie(scheme_host_port_, path_) = split_url(config_.url);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme_host_port_.rfind("https", 0) == 0)
    throw Error(ErrorKind::config, "https endpoints need a TLS-enabled build");
#endif
}

ResultSet RemoteExecutor::execute(std::string_view query) {
  auto backoff = limits_.initial_backoff;
  for (int attempt_no = 0;; ++attempt_no) {
    try {
      return attempt(query);
    } catch (const HttpFailure& f) {
      if (!f.retryable || attempt_no >= limits_.max_retries)
        throw Error(f.kind, f.message);
    }
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

ResultSet RemoteExecutor::attempt(std::string_view query) {
  if (limiter_) limiter_->acquire();
  httplib::Client client(scheme_host_port_);
  auto secs = limits_.per_query_timeout.count() / 1000;
  auto usecs = (limits_.per_query_timeout.count() % 1000) * 1000;
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  httplib::Headers headers = {{"Accept", "application/sparql-results+json"},
                              {"User-Agent", config_.user_agent}};
  httplib::Params params = {{"query", std::string(query)}};
  bool post = config_.method == "POST" || (config_.method != "GET" && query.size() > 1500);
  httplib::Result res = post ? client.Post(path_, headers, params)
                             : client.Get(path_, params, headers);
  if (!res) {
    auto err = res.error();
    bool timeout = err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout;
    throw HttpFailure{timeout ? ErrorKind::timeout : ErrorKind::endpoint,
                      config_.url + ": " + httplib::to_string(err), true};
  }
  if (res->status == 400)
    throw HttpFailure{ErrorKind::malformed_query, "endpoint rejected query: " + res->body,
                      false};
  if (res->status >= 500 || res->status == 429)
    throw HttpFailure{ErrorKind::endpoint,
                      config_.url + ": HTTP " + std::to_string(res->status) + " " + res->body,
                      true};
  if (res->status != 200)
    throw HttpFailure{ErrorKind::endpoint,
                      config_.url + ": HTTP " + std::to_string(res->status) + " " + res->body,
                      false};
  return parse_sparql_json(res->body);
}

ResultSet execute_remote(std::string_view query, const EndpointConfig& endpoint,
                         std::chrono::milliseconds timeout) {
  EndpointLimits limits;
  limits.per_query_timeout = timeout;
  return RemoteExecutor(endpoint, limits).execute(query);
}

struct MockServer::Impl {
  httplib::Server server;
  std::thread thread;
};

MockServer::MockServer(std::shared_ptr<const Snapshot> snapshot, const std::string& host,
                       int port)
    : impl_(std::make_unique<Impl>()), host_(host) {
  auto handler = [snapshot](const httplib::Request& req, httplib::Response& res) {
    std::string query;
    if (req.has_param("query")) {
      query = req.get_param_value("query");
    } else if (req.method == "POST" &&
               req.get_header_value("Content-Type").rfind("application/sparql-query", 0) == 0) {
      query = req.body;
    }
    if (query.empty()) {
      res.status = 400;
      res.set_content("missing 'query' parameter", "text/plain");
      return;
    }
    try {
      auto rs = execute_local(*snapshot, query);
      res.set_content(to_sparql_json(rs).dump(), "application/sparql-results+json");
    } catch (const Error& e) {
      res.status = 400;
      res.set_content(e.what(), "text/plain");
    }
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port(host);
    if (port_ <= 0) throw Error(ErrorKind::io, "cannot bind " + host);
  } else {
    if (!impl_->server.bind_to_port(host, port))
      throw Error(ErrorKind::io, "cannot bind " + host + ":" + std::to_string(port));
    port_ = port;
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

MockServer::~MockServer() { stop(); }

std::string MockServer::url() const {
  return "http://" + host_ + ":" + std::to_string(port_) + "/sparql";
}

void MockServer::wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

void MockServer::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::unique_ptr<MockServer> serve_mock(std::shared_ptr<const Snapshot> snapshot,
                                       const std::string& bind_address) {
  auto colon = bind_address.rfind(':');
  if (colon == std::string::npos)
    throw Error(ErrorKind::config, "bind address must be host:port, got '" + bind_address + "'");
  int port = 0;
  try {
    port = std::stoi(bind_address.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::config, "bad port in '" + bind_address + "'");
  }
  return std::make_unique<MockServer>(std::move(snapshot), bind_address.substr(0, colon), port);
}

std::unique_ptr<QueryExecutor> make_executor(const std::string& endpoint,
                                             const EndpointConfig& base,
                                             const EndpointLimits& limits,
                                             std::shared_ptr<RateLimiter> limiter) {
  if (endpoint.rfind("mock:", 0) == 0) {
    auto snap = std::make_shared<const Snapshot>(Snapshot::load_file(endpoint.substr(5)));
    return std::make_unique<LocalExecutor>(std::move(snap));
  }
  EndpointConfig cfg = base;
  cfg.url = endpoint;
  if (!limiter) limiter = std::make_shared<RateLimiter>(limits.min_request_interval);
  return std::make_unique<RemoteExecutor>(cfg, limits, std::move(limiter));
}

}  // namespace lexsparql
