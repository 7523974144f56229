#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pls {

enum class ErrorCode {
  syntax_error,
  no_parse,
  ambiguous_parse,
  unknown_kind,
  undeclared_variable,
  duplicate_id,
  kind_mismatch,
  unknown_assertion,
  unknown_statement,
  goal_not_derived,
  universe_overflow,
  io_error,
};

std::string_view to_string(ErrorCode code);

/// Every failure surfaced by the library. `line`/`column` are 1-based and
/// zero when the error has no source position.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int line = 0, int column = 0);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  ErrorCode code_;
  std::string detail_;
  int line_;
  int column_;
};

}  // namespace pls
