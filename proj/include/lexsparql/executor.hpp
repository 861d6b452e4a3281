#ifndef LEXSPARQL_EXECUTOR_HPP
#define LEXSPARQL_EXECUTOR_HPP

#include <chrono>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "lexsparql/rdf.hpp"
#include "lexsparql/snapshot.hpp"

namespace lexsparql {

struct EndpointLimits {
  std::size_t max_rows_per_query = 30000;
  std::size_t page_size = 10000;
  std::chrono::milliseconds per_query_timeout{60000};
  std::chrono::milliseconds min_request_interval{1000};
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{2000};

  // Throws Error(config) when an invariant is violated.
  void validate() const;
};

struct EndpointConfig {
  std::string url = "https://query.wikidata.org/sparql";
  std::string user_agent = "lexsparql/0.1 (dataset tooling)";
  // "auto" uses GET for short queries and POST otherwise.
  std::string method = "auto";
};

// Spaces requests to one endpoint. Shared by every worker talking to it.
class RateLimiter {
 public:
  explicit RateLimiter(std::chrono::milliseconds interval) : interval_(interval) {}

  // Blocks until at least `interval` has passed since the previous grant.
  void acquire();
  std::chrono::milliseconds interval() const { return interval_; }

 private:
  std::chrono::milliseconds interval_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_{};
};

class QueryExecutor {
 public:
  virtual ~QueryExecutor() = default;
  // Throws Error with kind parse / unsupported (local), or endpoint /
  // timeout / malformed_query (remote).
  virtual ResultSet execute(std::string_view query) = 0;
  virtual std::string describe() const = 0;
};

class LocalExecutor : public QueryExecutor {
 public:
  explicit LocalExecutor(std::shared_ptr<const Snapshot> snapshot)
      : snapshot_(std::move(snapshot)) {}

  ResultSet execute(std::string_view query) override;
  std::string describe() const override { return "local snapshot"; }
  const Snapshot& snapshot() const { return *snapshot_; }

 private:
  std::shared_ptr<const Snapshot> snapshot_;
};

// SPARQL Protocol client for application/sparql-results+json.
class RemoteExecutor : public QueryExecutor {
 public:
  RemoteExecutor(EndpointConfig config, EndpointLimits limits,
                 std::shared_ptr<RateLimiter> limiter = nullptr);

  ResultSet execute(std::string_view query) override;
  std::string describe() const override { return config_.url; }

 private:
  ResultSet attempt(std::string_view query);

  EndpointConfig config_;
  EndpointLimits limits_;
  std::shared_ptr<RateLimiter> limiter_;
  std::string scheme_host_port_;
  std::string path_;
};

ResultSet execute_remote(std::string_view query, const EndpointConfig& endpoint,
                         std::chrono::milliseconds timeout);

// Snapshot-backed SPARQL endpoint on a background thread.
class MockServer {
 public:
  MockServer(std::shared_ptr<const Snapshot> snapshot, const std::string& host, int port);
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  int port() const { return port_; }
  std::string url() const;
  // Blocks the calling thread until stop() is called from elsewhere.
  void wait();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string host_;
  int port_ = 0;
};

// bind_address "host:port"; port 0 picks a free port. Throws Error(io) when
// the address cannot be bound.
std::unique_ptr<MockServer> serve_mock(std::shared_ptr<const Snapshot> snapshot,
                                       const std::string& bind_address);

// Builds an executor from an endpoint spec: "mock:<snapshot path>" gives a
// LocalExecutor, anything else a RemoteExecutor.
std::unique_ptr<QueryExecutor> make_executor(const std::string& endpoint,
                                             const EndpointConfig& base,
                                             const EndpointLimits& limits,
                                             std::shared_ptr<RateLimiter> limiter);

}  // namespace lexsparql

#endif
