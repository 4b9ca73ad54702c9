#pragma once

#include <stdexcept>
#include <string>

namespace pursuitlab {

// All library errors derive from Error so callers can catch one type at the
// CLI boundary and map it to an exit code.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A point or parameter is outside the space / outside a function's domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// A path sample list violates the unit speed bound.
class SpeedError : public Error {
 public:
  explicit SpeedError(const std::string& what) : Error(what) {}
};

// Query outside a path's time domain.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(what) {}
};

// Malformed scenario files, bad CLI arguments, mismatched configuration.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

// A solve or play exceeded its state/commitment budget.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(what) {}
};

// A strategy broke its contract (bad commitment, precondition violation).
// The engine converts this into a fault entry on the play record.
class StrategyFaultError : public Error {
 public:
  explicit StrategyFaultError(const std::string& what) : Error(what) {}
};

}  // namespace pursuitlab
