#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dvcm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed corpus, index, or configuration file. `location` is either
/// "line L, col C" for syntax errors or a JSON path such as
/// "shots[3].life_span.start" for field errors.
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& message)
      : Error(location + ": " + message), location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// One broken invariant, tagged with the rule name and the offending entity.
struct Violation {
  std::string rule;
  std::string entity_id;
  std::string detail;

  bool operator==(const Violation&) const = default;
  auto operator<=>(const Violation&) const = default;
};

class IntegrityError : public Error {
 public:
  explicit IntegrityError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class UnknownIdError : public Error {
 public:
  UnknownIdError(const std::string& kind, const std::string& id)
      : Error("unknown " + kind + " '" + id + "'") {}
};

class FingerprintMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace dvcm
