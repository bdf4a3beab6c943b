#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apseq {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (signatures, deployment/scan/config/map-store files).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Raised by kmeans_1d when there are fewer distinct RSS values than clusters.
class DegenerateClusteringError : public Error {
 public:
  explicit DegenerateClusteringError(std::size_t max_feasible_k)
      : Error("degenerate clustering: at most " + std::to_string(max_feasible_k) +
              " clusters are feasible"),
        max_feasible_k_(max_feasible_k) {}

  std::size_t max_feasible_k() const noexcept { return max_feasible_k_; }

 private:
  std::size_t max_feasible_k_;
};

}  // namespace apseq
