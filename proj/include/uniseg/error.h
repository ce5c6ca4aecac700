#pragma once

#include <stdexcept>
#include <string>

namespace uniseg {

// All module failures carry a stable error-class name ("malformed-row",
// "marker-collision", ...) so callers and the CLI can report them uniformly.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message)
      : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace uniseg
