#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kc {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape of an argument is wrong (non-square matrix, mismatched sizes, ...).
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

// Singular matrix where an inverse was required.
class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(const std::string& what) : Error(what) {}
};

// Semantically invalid input (not a Seifert matrix, mixed parent groups, ...).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

// A computation exceeded its size or time budget. Carries the number of
// results produced before the budget ran out, so partial work is reportable.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::size_t partial_count = 0)
      : Error(what), partial_count_(partial_count) {}
  std::size_t partial_count() const { return partial_count_; }

 private:
  std::size_t partial_count_;
};

}  // namespace kc
