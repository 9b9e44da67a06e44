#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

// Thrown when a requested computation would exceed its configured search or
// size bound.  Callers that map results to exit codes treat this separately
// from invalid input.
class budget_error : public std::runtime_error {
 public:
  budget_error(std::string what, std::string required, std::string limit)
      : std::runtime_error(std::move(what)),
        required_(std::move(required)),
        limit_(std::move(limit)) {}

  const std::string& required() const { return required_; }
  const std::string& limit() const { return limit_; }

 private:
  std::string required_;
  std::string limit_;
};

}  // namespace ramsey
