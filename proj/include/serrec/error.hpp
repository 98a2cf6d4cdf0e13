#pragma once

#include <stdexcept>
#include <string>

namespace serrec {

/// Error codes for every failure mode the engine distinguishes.  Callers that
/// want to branch on a failure catch serrec::Error and switch on code().
enum class Errc {
  FieldMismatch,
  DimensionMismatch,
  NotIdempotent,
  NotDistinguishedSum,
  NotTwoSidedIdeal,
  DegenerateQuotient,
  InfiniteDimensional,
  MalformedRelation,
  AlgebraMismatch,
  RadicalUnavailable,
  NotSimple,
  SearchBudgetExceeded,
  CertificationFailed,
  NotATorsionPair,
  HypothesisViolated,
  SplitLiftFailed,
  NotGiraud,
  ExtensionFailed,
  SplitExpectedButFailed,
  InternalInconsistency,
  ParseError,
  InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Parse errors carry the input position (1-based line and column).
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& expected)
      : Error(Errc::ParseError, "line " + std::to_string(line) + ", col " +
                                    std::to_string(col) + ": expected " +
                                    expected),
        line_(line),
        col_(col),
        expected_(expected) {}

  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int col_;
  std::string expected_;
};

}  // namespace serrec
