#pragma once

#include <stdexcept>
#include <string>

namespace lgs {

// Physics-domain violation: invalid quantum numbers, beam geometry, or
// channel shape. The CLI maps this to exit code 3.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed configuration document. `path` names the offending field
// (e.g. "atom_in.l"). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace lgs
