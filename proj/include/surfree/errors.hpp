#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace surfree {

// Domain error carrying a stable machine-readable name; the CLI surfaces the
// name verbatim in its error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

[[noreturn]] inline void fail(std::string name, const std::string& message) {
  throw Error(std::move(name), message);
}

}  // namespace surfree
