#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spcluster {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed chart input. Row/column are 1-based positions among data cells.
class ParseError : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public ParseError {
 public:
  EmptyInput() : ParseError("empty input: no chart rows") {}
};

class NonBinaryCell : public ParseError {
 public:
  NonBinaryCell(std::size_t row, std::size_t col, const std::string& text)
      : ParseError("non-binary cell at row " + std::to_string(row) + ", column " +
                   std::to_string(col) + ": '" + text + "'"),
        row_(row),
        col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class RaggedRows : public ParseError {
 public:
  RaggedRows(std::size_t expected, std::size_t found)
      : ParseError("ragged rows: expected " + std::to_string(expected) +
                   " cells, found " + std::to_string(found)),
        expected_(expected),
        found_(found) {}

  std::size_t expected() const noexcept { return expected_; }
  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t expected_;
  std::size_t found_;
};

class DuplicateLabel : public ParseError {
 public:
  explicit DuplicateLabel(const std::string& label)
      : ParseError("duplicate label '" + label + "'") {}
};

/// A value violates an operation's precondition (bad M, bad noise, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public InvalidArgument {
 public:
  LengthMismatch(std::size_t expected, std::size_t found)
      : InvalidArgument("length mismatch: expected " + std::to_string(expected) +
                        ", found " + std::to_string(found)) {}
};

class NotSymmetric : public InvalidArgument {
 public:
  NotSymmetric(std::size_t i, std::size_t j)
      : InvalidArgument("connection matrix not symmetric at (" + std::to_string(i) +
                        ", " + std::to_string(j) + ")") {}
};

class NonzeroDiagonal : public InvalidArgument {
 public:
  explicit NonzeroDiagonal(std::size_t i)
      : InvalidArgument("connection matrix has nonzero diagonal at " +
                        std::to_string(i)) {}
};

class TooLarge : public InvalidArgument {
 public:
  TooLarge(std::size_t n, std::size_t limit)
      : InvalidArgument("state dimension " + std::to_string(n) +
                        " exceeds exhaustive limit " + std::to_string(limit)) {}
};

class MTooLarge : public InvalidArgument {
 public:
  MTooLarge(std::size_t m, std::size_t students)
      : InvalidArgument("cluster count " + std::to_string(m) +
                        " must be between 1 and the number of students (" +
                        std::to_string(students) + ")") {}
};

class EmptyClustering : public InvalidArgument {
 public:
  EmptyClustering() : InvalidArgument("clustering has no clusters") {}
};

class ConvergenceFailure : public Error {
 public:
  /// `start` is the student index (clustering) or state index (basin maps).
  explicit ConvergenceFailure(std::size_t start)
      : Error("trajectory from start " + std::to_string(start) +
              " exhausted the sweep budget"),
        start_(start) {}

  std::size_t start() const noexcept { return start_; }

 private:
  std::size_t start_;
};

class AllTrialsFailed : public Error {
 public:
  explicit AllTrialsFailed(std::size_t trials)
      : Error("all " + std::to_string(trials) + " trials failed") {}
};

}  // namespace spcluster
