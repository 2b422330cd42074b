#include "gradeband/error.hpp"

namespace gradeband {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyText: return "EmptyText";
    case ErrorKind::NotAWord: return "NotAWord";
    case ErrorKind::InvalidStats: return "InvalidStats";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::MissingMetric: return "MissingMetric";
    case ErrorKind::BadGrade: return "BadGrade";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingField: return "MissingField";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::UnknownFormat: return "UnknownFormat";
    case ErrorKind::EmptyQuestion: return "EmptyQuestion";
    case ErrorKind::ProviderError: return "ProviderError";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::NoData: return "NoData";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     std::optional<std::size_t> line) {
  std::string out(to_string(kind));
  if (line) out += " (line " + std::to_string(*line) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(decorate(kind, message, line)), kind_(kind), line_(line) {}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoError:
    case ErrorKind::ProviderError:
      return 1;
    default:
      return 2;
  }
}

}  // namespace gradeband
