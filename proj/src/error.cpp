#include "pls/error.hpp"

namespace pls {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::no_parse: return "NoParse";
    case ErrorCode::ambiguous_parse: return "AmbiguousParse";
    case ErrorCode::unknown_kind: return "UnknownKind";
    case ErrorCode::undeclared_variable: return "UndeclaredVariable";
    case ErrorCode::duplicate_id: return "DuplicateId";
    case ErrorCode::kind_mismatch: return "KindMismatch";
    case ErrorCode::unknown_assertion: return "UnknownAssertionId";
    case ErrorCode::unknown_statement: return "UnknownStatement";
    case ErrorCode::goal_not_derived: return "GoalNotDerived";
    case ErrorCode::universe_overflow: return "UniverseOverflow";
    case ErrorCode::io_error: return "IoError";
  }
  return "Error";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message, int line, int column) {
  std::string out(to_string(code));
  out += ": ";
  out += message;
  if (line > 0) {
    out += " (line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    out += ")";
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, int line, int column)
    : std::runtime_error(format_message(code, message, line, column)),
      code_(code),
      detail_(message),
      line_(line),
      column_(column) {}

}  // namespace pls
