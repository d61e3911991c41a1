#pragma once

#include <stdexcept>
#include <string>

namespace psdeig {

// Input matrix failed a positive-semidefiniteness check (negative pivot, etc.).
class NotPsdError : public std::runtime_error {
 public:
  explicit NotPsdError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical rank collapsed where a full-rank object was required.
class RankError : public std::runtime_error {
 public:
  explicit RankError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psdeig
