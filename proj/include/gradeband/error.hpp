#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gradeband {

enum class ErrorKind {
  EmptyText,
  NotAWord,
  InvalidStats,
  BadConfig,
  WrongArity,
  MissingMetric,
  BadGrade,
  ParseError,
  MissingField,
  IoError,
  UnknownFormat,
  EmptyQuestion,
  ProviderError,
  ConfigError,
  NoData,
  NotAPermutation,
  DimensionMismatch,
  EmptyCorpus,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `line()` is set for errors tied to a
/// line of an input file (1-based).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> line_;
};

/// Process exit code for an error: 1 for IO and provider failures, 2 for
/// everything that is a validation failure.
int exit_code_for(ErrorKind kind);

}  // namespace gradeband
