#pragma once

#include <stdexcept>
#include <string>

namespace medforge {

enum class ErrorKind {
  kBudget,           // a code exceeds MEDFORGE_BIGINT_BUDGET
  kMalformed,        // an HF value is not of the expected encoded shape
  kParse,            // text input rejected
  kUnsupported,      // a limit query the presentation cannot answer
  kInvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a presentation cannot decide a limit query; `query` names it.
class UnsupportedQuery : public Error {
 public:
  explicit UnsupportedQuery(std::string query)
      : Error(ErrorKind::kUnsupported, "UNSUPPORTED_PRESENTATION(" + query + ")"),
        query_(std::move(query)) {}
  const std::string& query() const { return query_; }

 private:
  std::string query_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(ErrorKind::kParse, std::to_string(line) + ":" +
                                     std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace medforge
