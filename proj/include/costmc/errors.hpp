#pragma once

#include <stdexcept>
#include <string>

namespace costmc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Linear algebra / basis maintenance.
class DegenerateVector : public Error {
 public:
  using Error::Error;
};
class RankDeficientRestriction : public Error {
 public:
  using Error::Error;
};
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class InvalidRank : public Error {
 public:
  using Error::Error;
};

// Index handling.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};
class EmptySelection : public Error {
 public:
  using Error::Error;
};

// Search caps for the exponential procedures.
class DimensionCapExceeded : public Error {
 public:
  using Error::Error;
};
class ZeroMatrix : public Error {
 public:
  using Error::Error;
};

// Algorithm inputs.
class InvalidD : public Error {
 public:
  using Error::Error;
};
class ModelMismatch : public Error {
 public:
  using Error::Error;
};
class LengthMismatch : public Error {
 public:
  using Error::Error;
};
class NonpositiveCost : public Error {
 public:
  using Error::Error;
};

// Baselines.
class NoFeasiblePlan : public Error {
 public:
  using Error::Error;
};
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// Instance files.
class UnknownFixture : public Error {
 public:
  using Error::Error;
};
class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg, long line = 0, long column = 0)
      : Error(line > 0 ? "line " + std::to_string(line) +
                             (column > 0 ? ", column " + std::to_string(column) : "") + ": " + msg
                       : msg),
        line_(line),
        column_(column) {}

  long line() const { return line_; }
  long column() const { return column_; }

 private:
  long line_ = 0;
  long column_ = 0;
};

}  // namespace costmc
