#ifndef LEXSPARQL_ERROR_HPP
#define LEXSPARQL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lexsparql {

// Failure classes. The CLI maps each one to its own exit status.
enum class ErrorKind {
  config,
  io,
  parse,
  validation,
  endpoint,
  timeout,
  malformed_query,
  unsupported,
  lookup,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by the local evaluator for syntax outside the supported subset.
class UnsupportedFeature : public Error {
 public:
  explicit UnsupportedFeature(std::string feature)
      : Error(ErrorKind::unsupported, "unsupported SPARQL feature: " + feature),
        feature_(std::move(feature)) {}

  const std::string& feature() const { return feature_; }

 private:
  std::string feature_;
};

}  // namespace lexsparql

#endif
