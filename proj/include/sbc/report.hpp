#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sbc {

struct Violation {
  std::string kind;
  std::string message;
  std::vector<std::string> ids;
};

/// Collected invariant violations; empty means valid.
class ValidationReport {
 public:
  void add(std::string kind, std::string message, std::vector<std::string> ids = {});
  void merge(const ValidationReport& other, const std::string& prefix = "");

  bool ok() const { return items_.empty(); }
  explicit operator bool() const { return ok(); }
  const std::vector<Violation>& violations() const { return items_; }
  bool has(const std::string& kind) const;
  std::string to_string() const;

 private:
  std::vector<Violation> items_;
};

/// Bad input or violated precondition (exit code 2 at the command line).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A mathematical identity failed to hold (exit code 1).
struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sbc
